/** Sequential capture runner: pace, capture, crop, append to the manifest.
 *
 * Strictly sequential within a run — the pacing schedule is the point; run
 * different platforms as separate processes. The manifest is append-only
 * JSONL in the shotparse record schema, so an interrupted run resumes from
 * its checkpoint without rewriting anything.
 */

import { appendFileSync, existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join, relative } from "node:path";

import type { Browser } from "./browser.js";
import { POST_SELECTORS } from "./browser.js";
import type { Clock } from "./clock.js";
import { cropBuffer } from "./crop.js";
import { nextDelayMs } from "./pacing.js";
import { screenshotId } from "./plan.js";
import type { CaptureJob, ManifestRecord, PacingPolicy } from "./types.js";

export interface RunOptions {
  browser: Browser;
  clock: Clock;
  policy: PacingPolicy;
  outDir: string;
  manifestPath: string;
  /** Stop (with a resumable checkpoint) after this many consecutive
   * failures — the platform is throttling us. 0 disables. */
  stopAfterConsecutiveFailures?: number;
  resume?: boolean;
  onProgress?: (done: number, total: number, record: ManifestRecord) => void;
}

export interface RunSummary {
  attempted: number;
  ok: number;
  broken: number;
  skipped: number;
  stoppedEarly: boolean;
}

function checkpointPath(manifestPath: string): string {
  return join(dirname(manifestPath), "checkpoint.json");
}

export function readCheckpoint(manifestPath: string): number {
  const path = checkpointPath(manifestPath);
  if (!existsSync(path)) return 0;
  return JSON.parse(readFileSync(path, "utf-8")).nextIndex as number;
}

function writeCheckpoint(manifestPath: string, nextIndex: number): void {
  writeFileSync(checkpointPath(manifestPath), JSON.stringify({ nextIndex }) + "\n");
}

export function appendManifestRecord(manifestPath: string, record: ManifestRecord): void {
  const ordered: Record<string, unknown> = {};
  const plain = record as unknown as Record<string, unknown>;
  for (const key of Object.keys(plain).sort()) {
    ordered[key] = plain[key];
  }
  appendFileSync(manifestPath, JSON.stringify(ordered) + "\n");
}

export async function runCaptures(jobs: CaptureJob[], options: RunOptions): Promise<RunSummary> {
  mkdirSync(options.outDir, { recursive: true });
  mkdirSync(dirname(options.manifestPath), { recursive: true });
  const summary: RunSummary = { attempted: 0, ok: 0, broken: 0, skipped: 0, stoppedEarly: false };
  const threshold = options.stopAfterConsecutiveFailures ?? 0;
  const start = options.resume ? readCheckpoint(options.manifestPath) : 0;

  let consecutiveFailures = 0;
  for (let index = start; index < jobs.length; index++) {
    const job = jobs[index];
    await options.clock.sleep(nextDelayMs(options.policy, index + 1));

    summary.attempted += 1;
    const id = screenshotId(job, index);
    const result = await options.browser.capture({
      url: job.postUrl.url,
      mode: job.mode,
      viewport: job.viewport,
      selector: POST_SELECTORS[job.postUrl.platform],
    });

    let record: ManifestRecord;
    if (result.status === "ok") {
      let png = result.png;
      if (job.crop) {
        png = cropBuffer(png, job.crop);
      }
      writeFileSync(job.outputPath, png);
      record = {
        schema_version: 1,
        screenshot_id: id,
        platform: job.postUrl.platform,
        mode: job.mode,
        url: job.postUrl.url,
        image_path: relative(dirname(options.manifestPath), job.outputPath),
        captured_at: options.clock.now().toISOString(),
        status: "Ok",
      };
      summary.ok += 1;
      consecutiveFailures = 0;
    } else {
      record = {
        schema_version: 1,
        screenshot_id: id,
        platform: job.postUrl.platform,
        mode: job.mode,
        url: job.postUrl.url,
        captured_at: options.clock.now().toISOString(),
        status: "BrokenUrl",
      };
      summary.broken += 1;
      consecutiveFailures += 1;
    }
    appendManifestRecord(options.manifestPath, record);
    writeCheckpoint(options.manifestPath, index + 1);
    options.onProgress?.(index + 1, jobs.length, record);

    if (threshold > 0 && consecutiveFailures >= threshold) {
      summary.stoppedEarly = true;
      break;
    }
  }
  return summary;
}
