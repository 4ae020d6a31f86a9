import { describe, expect, it } from "vitest";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { CsvError, parseSweepCsv } from "../src/csv.js";

const FIXTURES = new URL("./fixtures/", import.meta.url).pathname;

function tempCsv(content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "ddrf-csv-"));
  const path = join(dir, "t.csv");
  writeFileSync(path, content);
  return path;
}

describe("parseSweepCsv", () => {
  it("parses a real spectroscopy sweep", () => {
    const sweep = parseSweepCsv(join(FIXTURES, "spectroscopy.csv"));
    expect(sweep.xName).toBe("rf_frequency");
    expect(sweep.xUnit).toBe("Hz");
    expect(sweep.yName).toBe("phase_increment");
    expect(sweep.xs.length).toBe(41);
    expect(sweep.ys.length).toBe(31);
    expect(sweep.values.length).toBe(41);
    expect(sweep.values[0].length).toBe(31);
    expect(sweep.metadata["kind"]).toBe("spectroscopy");
    for (const row of sweep.values) {
      for (const v of row) {
        expect(v).toBeGreaterThanOrEqual(0);
        expect(v).toBeLessThanOrEqual(1);
      }
    }
  });

  it("rejects files without the magic line", () => {
    const path = tempCsv("x [a],y [b],value\n1,2,3\n");
    expect(() => parseSweepCsv(path)).toThrow(CsvError);
    expect(() => parseSweepCsv(path)).toThrow(/magic/);
  });

  it("rejects files without metadata", () => {
    const path = tempCsv("# ddrfsim-sweep 1\nx [a],y [b],value\n1,2,3\n");
    expect(() => parseSweepCsv(path)).toThrow(/metadata/);
  });

  it("rejects empty value sections", () => {
    const path = tempCsv("# ddrfsim-sweep 1\n# kind: t\nx [a],y [b],value\n");
    expect(() => parseSweepCsv(path)).toThrow(/no data rows/);
  });

  it("rejects ragged grids", () => {
    const path = tempCsv(
      "# ddrfsim-sweep 1\n# kind: t\nx [a],y [b],value\n1,1,0\n1,2,0\n2,1,0\n"
    );
    expect(() => parseSweepCsv(path)).toThrow(/grid/);
  });

  it("rejects non-numeric rows", () => {
    const path = tempCsv(
      "# ddrfsim-sweep 1\n# kind: t\nx [a],y [b],value\n1,1,zap\n"
    );
    expect(() => parseSweepCsv(path)).toThrow(/non-numeric/);
  });

  it("keeps grid order for small grids", () => {
    const path = tempCsv(
      "# ddrfsim-sweep 1\n# kind: t\nx [a],y [b],value\n" +
        "1,10,0.1\n1,20,0.2\n2,10,0.3\n2,20,0.4\n"
    );
    const sweep = parseSweepCsv(path);
    expect(sweep.xs).toEqual([1, 2]);
    expect(sweep.ys).toEqual([10, 20]);
    expect(sweep.values).toEqual([
      [0.1, 0.2],
      [0.3, 0.4],
    ]);
  });
});
