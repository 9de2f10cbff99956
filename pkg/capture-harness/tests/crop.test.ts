import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";
import { PNG } from "pngjs";

import { RectOutOfBounds, cropBuffer, cropFile, encodePng, pixelAt, pngSize } from "../src/crop.js";

function gradientPng(width: number, height: number): Buffer {
  const png = new PNG({ width, height });
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const i = (y * width + x) * 4;
      png.data[i] = x % 256;
      png.data[i + 1] = y % 256;
      png.data[i + 2] = 7;
      png.data[i + 3] = 255;
    }
  }
  return PNG.sync.write(png);
}

describe("cropBuffer", () => {
  it("produces exactly the rect dimensions", () => {
    const out = cropBuffer(gradientPng(100, 80), { x: 10, y: 20, w: 50, h: 40 });
    expect(pngSize(out)).toEqual({ width: 50, height: 40 });
    // top-left pixel of the crop came from (10, 20)
    expect(pixelAt(out, 0, 0)).toEqual([10, 20, 7, 255]);
  });

  it("rejects rects that leave the image", () => {
    const data = gradientPng(100, 80);
    expect(() => cropBuffer(data, { x: 60, y: 0, w: 50, h: 40 })).toThrow(RectOutOfBounds);
    expect(() => cropBuffer(data, { x: -1, y: 0, w: 5, h: 5 })).toThrow(RectOutOfBounds);
    expect(() => cropBuffer(data, { x: 0, y: 0, w: 0, h: 5 })).toThrow(RectOutOfBounds);
  });

  it("is pixel-idempotent on the full rect", () => {
    const data = gradientPng(64, 48);
    const full = { x: 0, y: 0, w: 64, h: 48 };
    const once = cropBuffer(data, full);
    const twice = cropBuffer(once, full);
    expect(PNG.sync.read(twice).data).toEqual(PNG.sync.read(once).data);
    expect(PNG.sync.read(once).data).toEqual(PNG.sync.read(data).data);
  });
});

describe("cropFile", () => {
  it("writes a sibling and preserves the original", () => {
    const dir = mkdtempSync(join(tmpdir(), "crop-"));
    const source = join(dir, "shot.png");
    const original = gradientPng(40, 30);
    writeFileSync(source, original);
    const out = cropFile(source, { x: 0, y: 0, w: 20, h: 10 });
    expect(out).toBe(join(dir, "shot.cropped.png"));
    expect(readFileSync(source)).toEqual(original);
    expect(pngSize(readFileSync(out))).toEqual({ width: 20, height: 10 });
  });
});

describe("encodePng", () => {
  it("encodes a solid fill at the requested size", () => {
    const data = encodePng(8, 4, [21, 32, 43]);
    expect(pngSize(data)).toEqual({ width: 8, height: 4 });
    expect(pixelAt(data, 7, 3)).toEqual([21, 32, 43, 255]);
  });
});
