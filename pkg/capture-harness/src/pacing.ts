/** Deterministic anti-bot pacing.
 *
 * The delay for a URL is a pure function of (policy seed, 1-based URL
 * index): the index is hashed into the seed of a small PRNG, so the same
 * (seed, index) pair always yields the same duration no matter how many
 * times or in what order delays are asked for. Every 100th URL (by the
 * policy) gets a long five-minute-class pause on top of the jitter.
 */

import type { PacingPolicy } from "./types.js";
import { validatePacing } from "./types.js";

/** mulberry32: small, fast, good-enough PRNG for jitter. */
function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function mixSeedAndIndex(seed: number, index: number): number {
  // splitmix-style avalanche over the pair
  let h = (seed ^ 0x9e3779b9) >>> 0;
  h = Math.imul(h ^ index, 0x85ebca6b) >>> 0;
  h = Math.imul(h ^ (h >>> 13), 0xc2b2ae35) >>> 0;
  return (h ^ (h >>> 16)) >>> 0;
}

/** Delay in milliseconds before fetching the URL at `urlIndex` (1-based). */
export function nextDelayMs(policy: PacingPolicy, urlIndex: number): number {
  validatePacing(policy);
  if (!Number.isInteger(urlIndex) || urlIndex < 1) {
    throw new Error(`urlIndex must be a positive integer, got ${urlIndex}`);
  }
  const rand = mulberry32(mixSeedAndIndex(policy.seed, urlIndex))();
  const jitter = policy.jitterMinMs + rand * (policy.jitterMaxMs - policy.jitterMinMs);
  if (urlIndex % policy.longPauseEvery === 0) {
    return policy.longPauseMs + jitter;
  }
  return jitter;
}

/** The whole schedule for `count` URLs, for inspection and tests. */
export function delaySchedule(policy: PacingPolicy, count: number): number[] {
  const delays: number[] = [];
  for (let index = 1; index <= count; index++) {
    delays.push(nextDelayMs(policy, index));
  }
  return delays;
}
