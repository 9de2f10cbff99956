/** Shared domain types; manifest records follow the shotparse JSONL schema. */

export const PLATFORMS = ["Facebook", "Instagram", "TruthSocial", "Twitter"] as const;
export type Platform = (typeof PLATFORMS)[number];

export const MODES = ["WebLight", "WebDark", "MobileLight", "MobileDark"] as const;
export type CaptureMode = (typeof MODES)[number];

export type CaptureStatus = "Ok" | "BrokenUrl" | "Skipped";

export interface PostUrl {
  platform: Platform;
  url: string;
  postId?: string;
  account?: string;
}

export interface Viewport {
  width: number;
  height: number;
}

export interface CropRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface CaptureJob {
  postUrl: PostUrl;
  mode: CaptureMode;
  viewport: Viewport;
  crop?: CropRect;
  outputPath: string;
}

/** Anti-bot schedule: jittered delays plus a long pause every Nth URL. */
export interface PacingPolicy {
  jitterMinMs: number;
  jitterMaxMs: number;
  longPauseEvery: number;
  longPauseMs: number;
  seed: number;
}

export const DEFAULT_PACING: Omit<PacingPolicy, "seed"> = {
  jitterMinMs: 2_000,
  jitterMaxMs: 12_000,
  longPauseEvery: 100,
  longPauseMs: 300_000,
};

/** One line of the capture manifest (schema_version 1). */
export interface ManifestRecord {
  schema_version: 1;
  screenshot_id: string;
  platform: Platform;
  mode: CaptureMode;
  url: string;
  image_path?: string;
  captured_at: string;
  status: CaptureStatus;
}

export function validatePacing(policy: PacingPolicy): void {
  if (!(policy.jitterMinMs > 0) || policy.jitterMinMs > policy.jitterMaxMs) {
    throw new Error("pacing requires 0 < jitterMin <= jitterMax");
  }
  if (policy.longPauseEvery < 1 || policy.longPauseMs < 0) {
    throw new Error("bad long-pause settings");
  }
}

/** Per-mode default viewports; mobile modes use a phone-class screen. */
export const DEFAULT_VIEWPORTS: Record<CaptureMode, Viewport> = {
  WebLight: { width: 1440, height: 900 },
  WebDark: { width: 1440, height: 900 },
  MobileLight: { width: 390, height: 844 },
  MobileDark: { width: 390, height: 844 },
};

export function isDarkMode(mode: CaptureMode): boolean {
  return mode === "WebDark" || mode === "MobileDark";
}

export function isMobileMode(mode: CaptureMode): boolean {
  return mode === "MobileLight" || mode === "MobileDark";
}

export const MODE_CODES: Record<CaptureMode, string> = {
  MobileDark: "MD",
  MobileLight: "ML",
  WebDark: "WD",
  WebLight: "WL",
};
