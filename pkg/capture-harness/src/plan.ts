/** Expand URL lists into per-(URL, mode) capture jobs. */

import { join } from "node:path";

import type { CaptureJob, CaptureMode, CropRect, PostUrl, Viewport } from "./types.js";
import { DEFAULT_VIEWPORTS, MODE_CODES } from "./types.js";

export interface PlanOptions {
  outDir: string;
  viewports?: Partial<Record<CaptureMode, Viewport>>;
  /** Hand-tuned crop per (platform, mode); applied after capture. */
  crops?: Partial<Record<string, CropRect>>;
}

export function cropKey(platform: string, mode: CaptureMode): string {
  return `${platform}/${mode}`;
}

export function screenshotId(job: { postUrl: PostUrl; mode: CaptureMode }, index: number): string {
  return `${job.postUrl.platform.toLowerCase()}-${MODE_CODES[job.mode].toLowerCase()}-${String(index).padStart(5, "0")}`;
}

/** One job per URL x mode, URL-major then mode-minor, deterministically. */
export function planCaptures(
  urls: PostUrl[],
  modes: CaptureMode[],
  options: PlanOptions,
): CaptureJob[] {
  if (urls.length === 0) {
    throw new Error("no URLs to capture");
  }
  if (modes.length === 0) {
    throw new Error("no capture modes selected");
  }
  const jobs: CaptureJob[] = [];
  urls.forEach((postUrl, urlIndex) => {
    for (const mode of modes) {
      const viewport = options.viewports?.[mode] ?? DEFAULT_VIEWPORTS[mode];
      const crop = options.crops?.[cropKey(postUrl.platform, mode)];
      if (crop && (crop.x + crop.w > viewport.width || crop.y + crop.h > viewport.height)) {
        throw new Error(`crop for ${cropKey(postUrl.platform, mode)} exceeds viewport`);
      }
      const id = screenshotId({ postUrl, mode }, urlIndex);
      jobs.push({
        postUrl,
        mode,
        viewport,
        crop,
        outputPath: join(options.outDir, `${id}.png`),
      });
    }
  });
  return jobs;
}
