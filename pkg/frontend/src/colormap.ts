/**
 * Cubehelix color map (Green 2011): a perceptually monotone helix through
 * RGB space, computed in closed form so no embedded tables are needed.
 */

import type { Rgb } from "./raster.js";

export interface ColormapOptions {
  start?: number;
  rotations?: number;
  hue?: number;
  gamma?: number;
}

export function cubehelix(t: number, opts: ColormapOptions = {}): Rgb {
  const { start = 0.5, rotations = -1.5, hue = 1.2, gamma = 1.0 } = opts;
  const x = Math.min(1, Math.max(0, t));
  const angle = 2 * Math.PI * (start / 3 + 1 + rotations * x);
  const frac = Math.pow(x, gamma);
  const amp = (hue * frac * (1 - frac)) / 2;
  const cos = Math.cos(angle);
  const sin = Math.sin(angle);
  const r = frac + amp * (-0.14861 * cos + 1.78277 * sin);
  const g = frac + amp * (-0.29227 * cos - 0.90649 * sin);
  const b = frac + amp * (1.97294 * cos);
  const clamp = (v: number) => Math.round(255 * Math.min(1, Math.max(0, v)));
  return [clamp(r), clamp(g), clamp(b)];
}

/** value in [0,1] -> color; kind "log" compresses toward small values with
 * the decade span given (values are assumed already unit-normalized). */
export function colorize(unit: number, logSpan = 0): Rgb {
  let t = unit;
  if (logSpan > 0) {
    const floor = Math.pow(10, -logSpan);
    t = unit <= 0 ? 0 : (Math.log10(Math.max(unit, floor)) + logSpan) / logSpan;
  }
  return cubehelix(t);
}
