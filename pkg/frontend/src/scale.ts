/** Axis scaling and tick placement (linear 1-2-5 ticks, log decade ticks). */

export interface AxisScale {
  /** data -> [0, 1] */
  toUnit(v: number): number;
  ticks: number[];
  min: number;
  max: number;
  log: boolean;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(0).replace("e+", "e");
  }
  const s = v.toPrecision(4);
  return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
}

export function linearScale(lo: number, hi: number, maxTicks = 6): AxisScale {
  if (!(hi > lo)) {
    hi = lo + (lo === 0 ? 1 : Math.abs(lo) * 1e-6);
  }
  const span = hi - lo;
  const step0 = Math.pow(10, Math.floor(Math.log10(span / maxTicks)));
  let step = step0;
  for (const mult of [1, 2, 5, 10]) {
    step = step0 * mult;
    if (span / step <= maxTicks) break;
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return {
    toUnit: (v) => (v - lo) / span,
    ticks,
    min: lo,
    max: hi,
    log: false,
  };
}

export function logScale(lo: number, hi: number): AxisScale {
  if (!(lo > 0) || !(hi > lo)) {
    throw new Error(`log scale needs 0 < lo < hi, got [${lo}, ${hi}]`);
  }
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const ticks: number[] = [];
  for (let d = Math.ceil(llo); d <= Math.floor(lhi); d++) {
    ticks.push(Math.pow(10, d));
  }
  if (ticks.length === 0) {
    ticks.push(lo, hi);
  }
  return {
    toUnit: (v) => (Math.log10(Math.max(v, Number.MIN_VALUE)) - llo) / (lhi - llo),
    ticks,
    min: lo,
    max: hi,
    log: true,
  };
}
