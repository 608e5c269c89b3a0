/**
 * Scene to PNG. Rasterizes onto an RGB buffer (rect fill, 1px lines,
 * 5x7 bitmap text) and encodes with stored-settings deflate, so output
 * bytes are stable for a fixed scene and zlib build.
 */

import { deflateSync } from "node:zlib";
import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font.js";
import { Prim, Scene } from "./scene.js";

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

class Raster {
  data: Uint8Array;
  constructor(
    public width: number,
    public height: number,
  ) {
    this.data = new Uint8Array(width * height * 3);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const o = (y * this.width + x) * 3;
    this.data[o] = rgb[0];
    this.data[o + 1] = rgb[1];
    this.data[o + 2] = rgb[2];
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    for (let j = 0; j < h; j++) {
      for (let i = 0; i < w; i++) {
        this.set(x + i, y + j, rgb);
      }
    }
  }

  line(x1: number, y1: number, x2: number, y2: number, rgb: [number, number, number], width: number): void {
    // Bresenham; width > 1 is stamped as a small square.
    let x = Math.round(x1);
    let y = Math.round(y1);
    const ex = Math.round(x2);
    const ey = Math.round(y2);
    const dx = Math.abs(ex - x);
    const dy = -Math.abs(ey - y);
    const sx = x < ex ? 1 : -1;
    const sy = y < ey ? 1 : -1;
    let err = dx + dy;
    const r = Math.max(0, Math.floor(width / 2));
    for (;;) {
      for (let oy = -r; oy <= r; oy++) {
        for (let ox = -r; ox <= r; ox++) {
          this.set(x + ox, y + oy, rgb);
        }
      }
      if (x === ex && y === ey) break;
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

  text(
    x: number,
    baseline: number,
    s: string,
    size: number,
    rgb: [number, number, number],
    anchor: "start" | "middle" | "end",
  ): void {
    const scale = Math.max(1, Math.round(size / 7));
    const advance = (GLYPH_WIDTH + 1) * scale;
    const total = s.length * advance - scale;
    let cx = x;
    if (anchor === "middle") cx = x - Math.floor(total / 2);
    if (anchor === "end") cx = x - total;
    const top = baseline - GLYPH_HEIGHT * scale;
    for (const ch of s) {
      const rows = glyphFor(ch);
      for (let ry = 0; ry < GLYPH_HEIGHT; ry++) {
        for (let rx = 0; rx < GLYPH_WIDTH; rx++) {
          if ((rows[ry] >> (GLYPH_WIDTH - 1 - rx)) & 1) {
            this.fillRect(cx + rx * scale, top + ry * scale, scale, scale, rgb);
          }
        }
      }
      cx += advance;
    }
  }
}

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (let i = 0; i < buf.length; i++) {
    c = CRC_TABLE[(c ^ buf[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Buffer {
  const head = Buffer.alloc(8);
  head.writeUInt32BE(data.length, 0);
  head.write(type, 4, "ascii");
  const body = Buffer.concat([Buffer.from(type, "ascii"), Buffer.from(data)]);
  const tail = Buffer.alloc(4);
  tail.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([head, Buffer.from(data), tail]);
}

export function encodePng(raster: Raster): Buffer {
  const { width, height, data } = raster;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // RGB
  const raw = Buffer.alloc(height * (1 + width * 3));
  for (let y = 0; y < height; y++) {
    const o = y * (1 + width * 3);
    raw[o] = 0; // filter: none
    raw.set(data.subarray(y * width * 3, (y + 1) * width * 3), o + 1);
  }
  const idat = deflateSync(raw, { level: 9, memLevel: 9, strategy: 0 });
  return Buffer.concat([
    Buffer.from([137, 80, 78, 71, 13, 10, 26, 10]),
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function renderPng(scene: Scene): Buffer {
  const raster = new Raster(scene.width, scene.height);
  raster.fillRect(0, 0, scene.width, scene.height, hexToRgb(scene.background));
  for (const p of scene.prims as Prim[]) {
    switch (p.kind) {
      case "rect":
        raster.fillRect(p.x, p.y, p.w, p.h, hexToRgb(p.fill));
        break;
      case "line":
        raster.line(p.x1, p.y1, p.x2, p.y2, hexToRgb(p.color), p.width);
        break;
      case "poly":
        for (let i = 1; i < p.points.length; i++) {
          raster.line(
            p.points[i - 1][0],
            p.points[i - 1][1],
            p.points[i][0],
            p.points[i][1],
            hexToRgb(p.color),
            p.width,
          );
        }
        break;
      case "text":
        raster.text(p.x, p.y, p.text, p.size, hexToRgb(p.color), p.anchor);
        break;
    }
  }
  return encodePng(raster);
}

export { Raster };
