/** URL-list loading, matching the shotparse text format. */

import { readFileSync } from "node:fs";

import type { Platform, PostUrl } from "./types.js";

const PATH_SHAPES: Record<Platform, (parts: string[]) => { postId?: string; account?: string }> = {
  Twitter: (parts) =>
    parts.length >= 3 && parts[1] === "status"
      ? { postId: parts[2], account: parts[0] }
      : {},
  Instagram: (parts) =>
    parts.length >= 2 && parts[0] === "p" ? { postId: parts[1] } : {},
  Facebook: (parts) =>
    parts.length >= 3 && parts[1] === "posts"
      ? { postId: parts[2], account: parts[0] }
      : {},
  TruthSocial: (parts) =>
    parts.length >= 3 && parts[0].startsWith("@") && parts[1] === "posts"
      ? { postId: parts[2], account: parts[0].slice(1) }
      : {},
};

/** Parse one URL. The platform tag comes from the caller (the harness runs
 * one platform per invocation); ids are extracted when the path shape is
 * recognizable, and any http(s) URL is accepted so locally served corpora
 * work. */
export function parsePostUrl(raw: string, platform: Platform, lineNumber = 0): PostUrl {
  let parsed: URL;
  try {
    parsed = new URL(raw.trim());
  } catch {
    throw new Error(`line ${lineNumber}: not a URL: ${raw.trim()}`);
  }
  if (parsed.protocol !== "http:" && parsed.protocol !== "https:") {
    throw new Error(`line ${lineNumber}: not an http(s) URL: ${raw.trim()}`);
  }
  const parts = parsed.pathname.split("/").filter((p) => p.length > 0);
  const ids = PATH_SHAPES[platform](parts);
  return { platform, url: raw.trim(), ...ids };
}

/** One URL per line; blank lines and `#` comments skipped. */
export function loadUrlList(path: string, platform: Platform): PostUrl[] {
  const urls: PostUrl[] = [];
  const lines = readFileSync(path, "utf-8").split(/\r?\n/);
  lines.forEach((line, i) => {
    const stripped = line.trim();
    if (!stripped || stripped.startsWith("#")) return;
    urls.push(parsePostUrl(stripped, platform, i + 1));
  });
  return urls;
}
