/** PNG cropping; the original image is always preserved. */

import { readFileSync, writeFileSync } from "node:fs";

import { PNG } from "pngjs";

import type { CropRect } from "./types.js";

export class RectOutOfBounds extends Error {}

export function encodePng(width: number, height: number, fill: [number, number, number]): Buffer {
  const png = new PNG({ width, height });
  for (let i = 0; i < width * height; i++) {
    png.data[i * 4] = fill[0];
    png.data[i * 4 + 1] = fill[1];
    png.data[i * 4 + 2] = fill[2];
    png.data[i * 4 + 3] = 255;
  }
  return PNG.sync.write(png);
}

export function pngSize(data: Buffer): { width: number; height: number } {
  const png = PNG.sync.read(data);
  return { width: png.width, height: png.height };
}

export function pixelAt(data: Buffer, x: number, y: number): [number, number, number, number] {
  const png = PNG.sync.read(data);
  const i = (y * png.width + x) * 4;
  return [png.data[i], png.data[i + 1], png.data[i + 2], png.data[i + 3]];
}

export function cropBuffer(data: Buffer, rect: CropRect): Buffer {
  const source = PNG.sync.read(data);
  if (
    rect.x < 0 || rect.y < 0 || rect.w <= 0 || rect.h <= 0 ||
    rect.x + rect.w > source.width || rect.y + rect.h > source.height
  ) {
    throw new RectOutOfBounds(
      `rect ${JSON.stringify(rect)} exceeds ${source.width}x${source.height}`,
    );
  }
  const out = new PNG({ width: rect.w, height: rect.h });
  PNG.bitblt(source, out, rect.x, rect.y, rect.w, rect.h, 0, 0);
  return PNG.sync.write(out);
}

/** Crop `imagePath` into `outputPath` (default: `<stem>.cropped.png`);
 * returns the output path. */
export function cropFile(imagePath: string, rect: CropRect, outputPath?: string): string {
  const target = outputPath ?? imagePath.replace(/\.png$/i, "") + ".cropped.png";
  const cropped = cropBuffer(readFileSync(imagePath), rect);
  writeFileSync(target, cropped);
  return target;
}
