/**
 * Heatmap rendering of a sweep: grid cells in index space (so log-spaced
 * grids stay even), value ticks interpolated onto the axes, and a colorbar.
 * A logarithmic color scale spans decades below the map maximum, which keeps
 * structure near a fidelity ceiling visible.
 */

import { axisLabel, SweepData } from "./csv.js";
import { colorize } from "./colormap.js";
import { Canvas, textWidth } from "./raster.js";
import { formatTick, linearScale } from "./scale.js";

export const HEATMAP_WIDTH = 900;
export const HEATMAP_HEIGHT = 640;
const LOG_DECADES = 3;

const BLACK = [0, 0, 0] as const;
const GREY = [140, 140, 140] as const;

export interface HeatmapOptions {
  logColor?: boolean;
  title?: string;
}

/** fractional index of value v inside a monotone grid */
function fractionalIndex(grid: number[], v: number): number {
  const n = grid.length;
  const asc = grid[n - 1] >= grid[0];
  for (let i = 0; i < n - 1; i++) {
    const a = grid[i];
    const b = grid[i + 1];
    if ((asc && v >= a && v <= b) || (!asc && v <= a && v >= b)) {
      return b === a ? i : i + (v - a) / (b - a);
    }
  }
  return v === grid[n - 1] ? n - 1 : NaN;
}

export function renderHeatmap(sweep: SweepData, opts: HeatmapOptions = {}): Canvas {
  const canvas = new Canvas(HEATMAP_WIDTH, HEATMAP_HEIGHT);
  const left = 84;
  const right = HEATMAP_WIDTH - 110;
  const top = 46;
  const bottom = HEATMAP_HEIGHT - 64;
  const nx = sweep.xs.length;
  const ny = sweep.ys.length;

  let vmin = Infinity;
  let vmax = -Infinity;
  for (const row of sweep.values) {
    for (const v of row) {
      if (Number.isFinite(v)) {
        vmin = Math.min(vmin, v);
        vmax = Math.max(vmax, v);
      }
    }
  }
  if (!Number.isFinite(vmin)) {
    throw new Error("heatmap has no finite values");
  }
  const span = vmax > vmin ? vmax - vmin : 1;

  const unit = (v: number): number => {
    if (!Number.isFinite(v)) return 1;
    const u = (v - vmin) / span;
    if (!opts.logColor) return u;
    // decades below the maximum
    const d = Math.max(1 - u, Math.pow(10, -LOG_DECADES));
    return 1 - (Math.log10(d) + LOG_DECADES) / LOG_DECADES;
  };

  // cells, nearest-neighbor in index space (y axis points up)
  for (let px = left; px < right; px++) {
    const ix = Math.min(nx - 1, Math.floor(((px - left) / (right - left)) * nx));
    for (let py = top; py < bottom; py++) {
      const iy = Math.min(ny - 1, Math.floor(((bottom - 1 - py) / (bottom - top)) * ny));
      canvas.set(px, py, colorize(unit(sweep.values[ix][iy])));
    }
  }

  // frame
  canvas.line(left, top, right, top, BLACK);
  canvas.line(left, bottom, right, bottom, BLACK);
  canvas.line(left, top, left, bottom, BLACK);
  canvas.line(right, top, right, bottom, BLACK);

  // ticks from nice values interpolated into index space
  const xTicks = linearScale(Math.min(...sweep.xs), Math.max(...sweep.xs)).ticks;
  for (const t of xTicks) {
    const fi = fractionalIndex(sweep.xs, t);
    if (Number.isNaN(fi)) continue;
    const px = left + Math.round(((fi + 0.5) / nx) * (right - left));
    canvas.line(px, bottom, px, bottom + 5, BLACK);
    const label = formatTick(t);
    canvas.text(px - Math.floor(textWidth(label) / 2), bottom + 9, label, BLACK);
  }
  const yTicks = linearScale(Math.min(...sweep.ys), Math.max(...sweep.ys)).ticks;
  for (const t of yTicks) {
    const fi = fractionalIndex(sweep.ys, t);
    if (Number.isNaN(fi)) continue;
    const py = bottom - Math.round(((fi + 0.5) / ny) * (bottom - top));
    canvas.line(left - 5, py, left, py, BLACK);
    const label = formatTick(t);
    canvas.text(left - 8 - textWidth(label), py - 3, label, BLACK);
  }

  // axis labels come from the CSV verbatim
  const xl = axisLabel(sweep.xName, sweep.xUnit);
  canvas.text(
    Math.floor((left + right) / 2 - textWidth(xl) / 2), bottom + 26, xl, BLACK
  );
  const yl = axisLabel(sweep.yName, sweep.yUnit);
  canvas.textVertical(12, Math.floor((top + bottom) / 2 + textWidth(yl) / 2), yl, BLACK);
  if (opts.title) {
    canvas.text(left, 16, opts.title, BLACK);
  }

  // colorbar
  const cbLeft = right + 24;
  const cbRight = cbLeft + 22;
  for (let py = top; py < bottom; py++) {
    const u = (bottom - 1 - py) / (bottom - top - 1);
    const color = colorize(unit(vmin + u * span));
    for (let px = cbLeft; px < cbRight; px++) {
      canvas.set(px, py, color);
    }
  }
  canvas.line(cbLeft, top, cbRight, top, BLACK);
  canvas.line(cbLeft, bottom, cbRight, bottom, BLACK);
  canvas.line(cbLeft, top, cbLeft, bottom, BLACK);
  canvas.line(cbRight, top, cbRight, bottom, BLACK);
  canvas.text(cbRight + 4, bottom - 4, formatTick(vmin), BLACK);
  canvas.text(cbRight + 4, top - 3, formatTick(vmax), BLACK);
  if (opts.logColor) {
    canvas.text(cbRight + 4, Math.floor((top + bottom) / 2), "log", GREY);
  }
  return canvas;
}
