/** RGB pixel canvas with lines and bitmap text; the drawing surface behind
 * every figure. Coordinates are integer pixels, origin top-left. */

import { GLYPH_H, GLYPH_W, glyphRows } from "./font.js";

export type Rgb = readonly [number, number, number];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const k = (y * this.width + x) * 3;
    this.pixels[k] = color[0];
    this.pixels[k + 1] = color[1];
    this.pixels[k + 2] = color[2];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    const x1 = Math.max(0, x);
    const y1 = Math.max(0, y);
    const x2 = Math.min(this.width, x + w);
    const y2 = Math.min(this.height, y + h);
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Rgb): void {
    // Bresenham; endpoints included
    let [x, y] = [Math.round(x0), Math.round(y0)];
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(x, y, color);
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  /** Text at (x, y) = top-left corner; returns the width in pixels. */
  text(x: number, y: number, s: string, color: Rgb, scale = 1): number {
    let cx = x;
    for (const ch of s) {
      const rows = glyphRows(ch);
      for (let ry = 0; ry < GLYPH_H; ry++) {
        for (let rx = 0; rx < GLYPH_W; rx++) {
          if (rows[ry][rx] === "X") {
            this.fillRect(cx + rx * scale, y + ry * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_W + 1) * scale;
    }
    return cx - x;
  }

  /** Text rotated 90 degrees counter-clockwise (reads bottom-to-top). */
  textVertical(x: number, y: number, s: string, color: Rgb, scale = 1): void {
    let cy = y;
    for (const ch of s) {
      const rows = glyphRows(ch);
      for (let ry = 0; ry < GLYPH_H; ry++) {
        for (let rx = 0; rx < GLYPH_W; rx++) {
          if (rows[ry][rx] === "X") {
            // rotate glyph pixel (rx, ry) -> (ry, -rx)
            this.fillRect(x + ry * scale, cy - rx * scale, scale, scale, color);
          }
        }
      }
      cy -= (GLYPH_W + 1) * scale;
    }
  }
}

export function textWidth(s: string, scale = 1): number {
  return s.length * (GLYPH_W + 1) * scale;
}
