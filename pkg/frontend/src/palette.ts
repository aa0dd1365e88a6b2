/** Escape-time palette.
 *
 * Count 0 (never escaped) is black; counts 1..budget map to a fixed,
 * budget-scaled gray ramp from 55 to 255 so images with the same budget are
 * directly comparable.  The map is a bijection between counts and gray levels,
 * so rendered pixels can be converted back to the exact payload values.
 */

import type { PgmImage } from "./pgm.js";

const GRAY_LO = 55;
const GRAY_HI = 255;

export interface Palette {
  budget: number;
  toGray(count: number): number;
  toCount(gray: number): number;
}

export function escapeTimePalette(budget: number): Palette {
  if (!Number.isInteger(budget) || budget < 1 || budget > GRAY_HI - GRAY_LO + 1) {
    throw new RangeError(
      `budget must be an integer in [1, ${GRAY_HI - GRAY_LO + 1}], got ${budget}`,
    );
  }
  const span = budget === 1 ? 0 : (GRAY_HI - GRAY_LO) / (budget - 1);
  const toGray = (count: number): number => {
    if (!Number.isInteger(count) || count < 0 || count > budget) {
      throw new RangeError(`count out of range [0, ${budget}]: ${count}`);
    }
    if (count === 0) return 0;
    if (budget === 1) return GRAY_HI;
    return GRAY_LO + Math.round((count - 1) * span);
  };
  const toCount = (gray: number): number => {
    if (gray === 0) return 0;
    const count = budget === 1 ? 1 : Math.round((gray - GRAY_LO) / span) + 1;
    if (toGray(count) !== gray) {
      throw new RangeError(`gray level ${gray} is not in the palette`);
    }
    return count;
  };
  return { budget, toGray, toCount };
}

/** Expand a parsed graymap to RGBA bytes for a canvas ImageData buffer. */
export function renderRgba(image: PgmImage, palette: Palette): Uint8ClampedArray<ArrayBuffer> {
  const out = new Uint8ClampedArray(image.width * image.height * 4);
  for (let i = 0; i < image.pixels.length; i += 1) {
    const gray = palette.toGray(image.pixels[i] as number);
    out[4 * i] = gray;
    out[4 * i + 1] = gray;
    out[4 * i + 2] = gray;
    out[4 * i + 3] = 255;
  }
  return out;
}
