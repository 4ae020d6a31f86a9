import { describe, expect, it } from "vitest";
import { inflateSync } from "node:zlib";

import { encodePng } from "../src/png.js";

function readChunks(buf: Buffer) {
  const chunks: Array<{ type: string; data: Buffer }> = [];
  let off = 8;
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.subarray(off + 4, off + 8).toString("ascii");
    chunks.push({ type, data: buf.subarray(off + 8, off + 8 + len) });
    off += 12 + len;
  }
  return chunks;
}

describe("encodePng", () => {
  it("produces a structurally valid truecolor PNG", () => {
    const w = 7;
    const h = 5;
    const rgb = new Uint8Array(w * h * 3);
    rgb[0] = 255; // one red pixel top-left
    const png = encodePng(w, h, rgb);
    expect([...png.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    const chunks = readChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);
    expect(chunks[0].data.readUInt32BE(0)).toBe(w);
    expect(chunks[0].data.readUInt32BE(4)).toBe(h);
    const raw = inflateSync(chunks[1].data);
    expect(raw.length).toBe(h * (1 + w * 3));
    expect(raw[0]).toBe(0); // filter byte
    expect(raw[1]).toBe(255); // red channel of the first pixel
  });

  it("is byte-deterministic", () => {
    const rgb = new Uint8Array(12 * 9 * 3).map((_, i) => (i * 37) % 256);
    const a = encodePng(12, 9, rgb);
    const b = encodePng(12, 9, rgb);
    expect(a.equals(b)).toBe(true);
  });

  it("rejects mismatched buffer sizes", () => {
    expect(() => encodePng(4, 4, new Uint8Array(5))).toThrow(/size/);
  });
});
