/**
 * Line plots of sweeps: each y-grid entry is one series over the x grid
 * (response curves per pulse number, sensitivity per protocol, ...);
 * several input files overlay with a shared legend. Log axes use decade
 * ticks; an optional horizontal guide line marks thresholds such as the
 * single-spin sensitivity.
 */

import { axisLabel, SweepData } from "./csv.js";
import { cubehelix } from "./colormap.js";
import { Canvas, Rgb, textWidth } from "./raster.js";
import { AxisScale, formatTick, linearScale, logScale } from "./scale.js";

export const LINE_WIDTH = 860;
export const LINE_HEIGHT = 560;

const BLACK = [0, 0, 0] as const;
const GREY = [150, 150, 150] as const;

export interface LinePlotOptions {
  logX?: boolean;
  logY?: boolean;
  guideY?: number;
  title?: string;
}

function seriesColor(k: number, total: number): Rgb {
  return cubehelix(total <= 1 ? 0.4 : 0.12 + (0.72 * k) / (total - 1));
}

export function renderLinePlot(sweeps: SweepData[], opts: LinePlotOptions = {}): Canvas {
  if (sweeps.length === 0) {
    throw new Error("line plot needs at least one sweep");
  }
  const canvas = new Canvas(LINE_WIDTH, LINE_HEIGHT);
  const left = 84;
  const right = LINE_WIDTH - 30;
  const top = 40;
  const bottom = LINE_HEIGHT - 64;

  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of sweeps) {
    for (const x of s.xs) {
      if (!opts.logX || x > 0) {
        xMin = Math.min(xMin, x);
        xMax = Math.max(xMax, x);
      }
    }
    for (const row of s.values) {
      for (const v of row) {
        if (Number.isFinite(v) && (!opts.logY || v > 0)) {
          yMin = Math.min(yMin, v);
          yMax = Math.max(yMax, v);
        }
      }
    }
  }
  if (!Number.isFinite(yMin)) {
    throw new Error("line plot has no finite values");
  }
  if (opts.guideY !== undefined && (!opts.logY || opts.guideY > 0)) {
    yMin = Math.min(yMin, opts.guideY);
    yMax = Math.max(yMax, opts.guideY);
  }
  if (!opts.logY) {
    const pad = 0.05 * (yMax - yMin || 1);
    yMin -= pad;
    yMax += pad;
  }

  const xScale: AxisScale = opts.logX ? logScale(xMin, xMax) : linearScale(xMin, xMax);
  const yScale: AxisScale = opts.logY ? logScale(yMin, yMax) : linearScale(yMin, yMax);
  const px = (v: number) => left + xScale.toUnit(v) * (right - left);
  const py = (v: number) => bottom - yScale.toUnit(v) * (bottom - top);

  // frame and ticks
  canvas.line(left, top, right, top, BLACK);
  canvas.line(left, bottom, right, bottom, BLACK);
  canvas.line(left, top, left, bottom, BLACK);
  canvas.line(right, top, right, bottom, BLACK);
  for (const t of xScale.ticks) {
    const x = Math.round(px(t));
    canvas.line(x, bottom, x, bottom + 5, BLACK);
    const label = formatTick(t);
    canvas.text(x - Math.floor(textWidth(label) / 2), bottom + 9, label, BLACK);
  }
  for (const t of yScale.ticks) {
    const y = Math.round(py(t));
    canvas.line(left - 5, y, left, y, BLACK);
    const label = formatTick(t);
    canvas.text(left - 8 - textWidth(label), y - 3, label, BLACK);
  }

  if (opts.guideY !== undefined) {
    const y = Math.round(py(opts.guideY));
    for (let x = left; x < right; x += 6) {
      canvas.line(x, y, Math.min(x + 2, right - 1), y, GREY);
    }
  }

  // series
  const totalSeries = sweeps.reduce((acc, s) => acc + s.ys.length, 0);
  let k = 0;
  let legendY = top + 8;
  for (const s of sweeps) {
    for (let j = 0; j < s.ys.length; j++) {
      const color = seriesColor(k, totalSeries);
      let prev: [number, number] | null = null;
      for (let i = 0; i < s.xs.length; i++) {
        const v = s.values[i][j];
        const xOk = !opts.logX || s.xs[i] > 0;
        if (!Number.isFinite(v) || !xOk || (opts.logY && v <= 0)) {
          prev = null;
          continue;
        }
        const pt: [number, number] = [Math.round(px(s.xs[i])), Math.round(py(v))];
        if (prev) {
          canvas.line(prev[0], prev[1], pt[0], pt[1], color);
          canvas.line(prev[0], prev[1] + 1, pt[0], pt[1] + 1, color);
        }
        prev = pt;
      }
      const tag = s.metadata["column"] ?? s.metadata["quantity"] ?? s.yName;
      const label = `${tag} ${axisLabel("", s.yUnit).trim()} ${formatTick(s.ys[j])}`;
      canvas.fillRect(right - 200, legendY, 14, 3, color);
      canvas.text(right - 182, legendY - 3, label.trim(), BLACK);
      legendY += 13;
      k += 1;
    }
  }

  const xl = axisLabel(sweeps[0].xName, sweeps[0].xUnit);
  canvas.text(Math.floor((left + right) / 2 - textWidth(xl) / 2), bottom + 26, xl, BLACK);
  canvas.textVertical(12, Math.floor((top + bottom) / 2 + textWidth("value") * 3), "value", BLACK);
  if (opts.title) {
    canvas.text(left, 16, opts.title, BLACK);
  }
  return canvas;
}
