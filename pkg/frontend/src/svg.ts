/** Scene to standalone SVG. Output is byte-deterministic for a fixed scene. */

import { Scene } from "./scene.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderSvg(scene: Scene): string {
  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" ` +
      `viewBox="0 0 ${scene.width} ${scene.height}" font-family="monospace">`,
  );
  out.push(`<rect width="${scene.width}" height="${scene.height}" fill="${scene.background}"/>`);
  for (const p of scene.prims) {
    switch (p.kind) {
      case "rect":
        out.push(`<rect x="${p.x}" y="${p.y}" width="${p.w}" height="${p.h}" fill="${p.fill}"/>`);
        break;
      case "line":
        out.push(
          `<line x1="${p.x1}" y1="${p.y1}" x2="${p.x2}" y2="${p.y2}" stroke="${p.color}" stroke-width="${p.width}"/>`,
        );
        break;
      case "poly": {
        const pts = p.points.map(([x, y]) => `${x},${y}`).join(" ");
        out.push(
          `<polyline fill="none" stroke="${p.color}" stroke-width="${p.width}" points="${pts}"/>`,
        );
        break;
      }
      case "text":
        out.push(
          `<text x="${p.x}" y="${p.y}" font-size="${p.size + 2}" fill="${p.color}" ` +
            `text-anchor="${p.anchor === "start" ? "start" : p.anchor}">${esc(p.text)}</text>`,
        );
        break;
    }
  }
  out.push("</svg>");
  return out.join("\n") + "\n";
}
