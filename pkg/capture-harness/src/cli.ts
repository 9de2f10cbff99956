#!/usr/bin/env node
/** capture-harness CLI.
 *
 *   capture --urls urls.txt --platform Twitter --modes WebLight,WebDark \
 *           --out shots/ --seed 7 [--fetch-only] [--resume]
 */

import { join } from "node:path";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { FetchBrowser, PuppeteerBrowser, type Browser } from "./browser.js";
import { RealClock } from "./clock.js";
import { runCaptures } from "./capture.js";
import { planCaptures } from "./plan.js";
import { loadUrlList } from "./urls.js";
import {
  DEFAULT_PACING,
  MODES,
  PLATFORMS,
  type CaptureMode,
  type Platform,
} from "./types.js";

export async function main(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .command("capture", "screenshot every URL in the selected modes")
    .demandCommand(1)
    .option("urls", { type: "string", demandOption: true, describe: "URL list file" })
    .option("platform", {
      type: "string",
      demandOption: true,
      choices: PLATFORMS as unknown as string[],
    })
    .option("modes", {
      type: "string",
      default: MODES.join(","),
      describe: "comma-separated capture modes",
    })
    .option("out", { type: "string", demandOption: true, describe: "output directory" })
    .option("seed", { type: "number", demandOption: true, describe: "pacing seed" })
    .option("fetch-only", {
      type: "boolean",
      default: false,
      describe: "use the HTTP-fetch browser stand-in instead of puppeteer",
    })
    .option("resume", { type: "boolean", default: false })
    .option("stop-after-failures", { type: "number", default: 25 })
    .strict()
    .parse();

  const platform = args.platform as Platform;
  const modes = (args.modes as string).split(",").map((m) => m.trim()) as CaptureMode[];
  for (const mode of modes) {
    if (!MODES.includes(mode)) {
      console.error(`unknown mode: ${mode}`);
      return 2;
    }
  }

  const urls = loadUrlList(args.urls as string, platform);
  const jobs = planCaptures(urls, modes, { outDir: join(args.out as string, "images") });

  const browser: Browser = args["fetch-only"]
    ? new FetchBrowser()
    : await PuppeteerBrowser.launch();
  try {
    const summary = await runCaptures(jobs, {
      browser,
      clock: new RealClock(),
      policy: { ...DEFAULT_PACING, seed: args.seed as number },
      outDir: join(args.out as string, "images"),
      manifestPath: join(args.out as string, "manifest.jsonl"),
      stopAfterConsecutiveFailures: args["stop-after-failures"] as number,
      resume: args.resume as boolean,
      onProgress: (done, total, record) =>
        console.error(`[${done}/${total}] ${record.screenshot_id} ${record.status}`),
    });
    console.log(
      `captured ${summary.ok} ok, ${summary.broken} broken of ${jobs.length} job(s)` +
        (summary.stoppedEarly ? " (stopped early; checkpoint written)" : ""),
    );
    return 0;
  } finally {
    await browser.close();
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  main(hideBin(process.argv)).then(
    (code) => process.exit(code),
    (error) => {
      console.error(String(error));
      process.exit(1);
    },
  );
}
