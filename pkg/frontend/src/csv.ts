/**
 * Parser for ddrfsim sweep CSVs.
 *
 * Format: a magic first line, `# key: value` metadata lines, a header
 * `xname [xunit],yname [yunit],value`, then x,y,value triples in row-major
 * order (x slowest). Axis labels are taken from the file verbatim.
 */

import { readFileSync } from "node:fs";

const MAGIC = "# ddrfsim-sweep 1";
const HEADER = /^([^,[\]]+) \[([^\]]*)\],([^,[\]]+) \[([^\]]*)\],value$/;

export interface SweepData {
  xName: string;
  xUnit: string;
  yName: string;
  yUnit: string;
  xs: number[];
  ys: number[];
  /** values[ix][iy], matching the row-major file order */
  values: number[][];
  metadata: Record<string, string>;
  sourcePath: string;
}

export class CsvError extends Error {}

export function parseSweepCsv(path: string): SweepData {
  const text = readFileSync(path, "utf-8");
  const lines = text.split(/\r?\n/);
  if (lines[0] !== MAGIC) {
    throw new CsvError(`${path}: not a ddrfsim sweep CSV (missing magic line)`);
  }
  const metadata: Record<string, string> = {};
  let i = 1;
  for (; i < lines.length && lines[i].startsWith("#"); i++) {
    const body = lines[i].slice(1).trim();
    const sep = body.indexOf(":");
    if (sep > 0) {
      metadata[body.slice(0, sep).trim()] = body.slice(sep + 1).trim();
    }
  }
  if (Object.keys(metadata).length === 0) {
    throw new CsvError(`${path}: metadata block is missing or empty`);
  }
  const header = lines[i] ?? "";
  const m = HEADER.exec(header);
  if (!m) {
    throw new CsvError(`${path}: malformed header line ${JSON.stringify(header)}`);
  }
  const rows: Array<[number, number, number]> = [];
  for (i += 1; i < lines.length; i++) {
    const line = lines[i];
    if (!line) continue;
    const parts = line.split(",");
    if (parts.length !== 3) {
      throw new CsvError(`${path}: malformed data row ${JSON.stringify(line)}`);
    }
    const nums = parts.map(Number) as [number, number, number];
    if (nums.some((v) => Number.isNaN(v))) {
      throw new CsvError(`${path}: non-numeric data row ${JSON.stringify(line)}`);
    }
    rows.push(nums);
  }
  if (rows.length === 0) {
    throw new CsvError(`${path}: no data rows`);
  }

  // rows are x-major: the leading block of constant x spans the y grid
  let ny = 1;
  while (ny < rows.length && rows[ny][0] === rows[0][0]) ny++;
  if (rows.length % ny !== 0) {
    throw new CsvError(`${path}: row count does not form a full grid`);
  }
  const nx = rows.length / ny;
  const xs: number[] = [];
  const ys: number[] = [];
  for (let k = 0; k < nx; k++) xs.push(rows[k * ny][0]);
  for (let k = 0; k < ny; k++) ys.push(rows[k][1]);
  const values: number[][] = [];
  for (let ix = 0; ix < nx; ix++) {
    const row: number[] = [];
    for (let iy = 0; iy < ny; iy++) {
      const r = rows[ix * ny + iy];
      if (r[0] !== xs[ix] || r[1] !== ys[iy]) {
        throw new CsvError(`${path}: rows are not in row-major grid order`);
      }
      row.push(r[2]);
    }
    values.push(row);
  }
  return {
    xName: m[1],
    xUnit: m[2],
    yName: m[3],
    yUnit: m[4],
    xs,
    ys,
    values,
    metadata,
    sourcePath: path,
  };
}

export function axisLabel(name: string, unit: string): string {
  return unit ? `${name} [${unit}]` : name;
}
