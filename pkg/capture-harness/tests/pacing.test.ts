import { describe, expect, it } from "vitest";

import { delaySchedule, nextDelayMs } from "../src/pacing.js";
import { DEFAULT_PACING, type PacingPolicy } from "../src/types.js";

const policy: PacingPolicy = { ...DEFAULT_PACING, seed: 7 };

describe("nextDelayMs", () => {
  it("draws ordinary delays inside the jitter window", () => {
    const delay = nextDelayMs(policy, 57);
    expect(delay).toBeGreaterThanOrEqual(2_000);
    expect(delay).toBeLessThanOrEqual(12_000);
  });

  it("adds the long pause on every 100th URL", () => {
    expect(nextDelayMs(policy, 100)).toBeGreaterThanOrEqual(300_000);
    expect(nextDelayMs(policy, 200)).toBeGreaterThanOrEqual(300_000);
  });

  it("is deterministic per (seed, index)", () => {
    expect(nextDelayMs(policy, 57)).toBe(nextDelayMs(policy, 57));
    expect(nextDelayMs(policy, 100)).toBe(nextDelayMs(policy, 100));
  });

  it("varies with the seed", () => {
    const other: PacingPolicy = { ...DEFAULT_PACING, seed: 8 };
    const schedule = delaySchedule(policy, 50);
    const otherSchedule = delaySchedule(other, 50);
    expect(schedule).not.toEqual(otherSchedule);
  });

  it("rejects non-positive indices", () => {
    expect(() => nextDelayMs(policy, 0)).toThrow();
    expect(() => nextDelayMs(policy, -3)).toThrow();
  });

  it("rejects a bad jitter window", () => {
    expect(() =>
      nextDelayMs({ ...policy, jitterMinMs: 0 }, 1),
    ).toThrow();
    expect(() =>
      nextDelayMs({ ...policy, jitterMinMs: 20_000 }, 1),
    ).toThrow();
  });
});

describe("schedule over 250 URLs", () => {
  // Acceptance: exactly 2 long pauses (indices 100, 200) of >= 300 s and
  // 248 delays within [2, 12] s; deterministic per seed. Simulated
  // schedule only — no real sleeping.
  it("has exactly two long pauses and 248 jittered delays", () => {
    const schedule = delaySchedule(policy, 250);
    expect(schedule).toHaveLength(250);
    const longIndices = schedule
      .map((delay, i) => ({ delay, index: i + 1 }))
      .filter(({ delay }) => delay >= 300_000)
      .map(({ index }) => index);
    expect(longIndices).toEqual([100, 200]);
    const ordinary = schedule.filter((_, i) => (i + 1) % 100 !== 0);
    expect(ordinary).toHaveLength(248);
    for (const delay of ordinary) {
      expect(delay).toBeGreaterThanOrEqual(2_000);
      expect(delay).toBeLessThanOrEqual(12_000);
    }
  });

  it("is reproducible", () => {
    expect(delaySchedule(policy, 250)).toEqual(delaySchedule(policy, 250));
  });
});
