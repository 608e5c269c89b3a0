/**
 * Backend-independent scene construction: pivot grid rows into one panel
 * per algorithm and lay out cells, axes, colorbar and overlay curves in
 * integer pixel coordinates.
 */

import { GridRow, OverlayPoint } from "./csv.js";

export interface RectPrim {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
}
export interface LinePrim {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  width: number;
}
export interface PolyPrim {
  kind: "poly";
  points: Array<[number, number]>;
  color: string;
  width: number;
}
export interface TextPrim {
  kind: "text";
  x: number;
  y: number; // baseline
  text: string;
  size: number;
  color: string;
  anchor: "start" | "middle" | "end";
}
export type Prim = RectPrim | LinePrim | PolyPrim | TextPrim;

export interface Scene {
  width: number;
  height: number;
  background: string;
  panels: string[];
  prims: Prim[];
}

const CELL_W = 15;
const CELL_H = 11;
const MARGIN_LEFT = 48;
const MARGIN_TOP = 34;
const MARGIN_BOTTOM = 34;
const PANEL_GAP = 18;
const COLORBAR_W = 12;
const COLORBAR_LABELS = 28;
const MISSING_FILL = "#e0e0e0";
const MISSING_STROKE = "#9a9a9a";
const OVERLAY_COLORS = ["#d62728", "#ffffff", "#1f77b4", "#ff7f0e"];

// Five-stop approximation of a perceptually ordered dark-to-bright map.
const RAMP: Array<[number, [number, number, number]]> = [
  [0.0, [68, 1, 84]],
  [0.25, [59, 82, 139]],
  [0.5, [33, 145, 140]],
  [0.75, [94, 201, 98]],
  [1.0, [253, 231, 37]],
];

export function colorFor(value: number): string {
  const v = Math.min(1, Math.max(0, value));
  for (let i = 1; i < RAMP.length; i++) {
    const [t1, c1] = RAMP[i];
    const [t0, c0] = RAMP[i - 1];
    if (v <= t1) {
      const f = (v - t0) / (t1 - t0);
      const rgb = c0.map((a, k) => Math.round(a + f * (c1[k] - a)));
      return `#${rgb.map((x) => x.toString(16).padStart(2, "0")).join("")}`;
    }
  }
  return "#fde725";
}

function fmt(v: number): string {
  return String(parseFloat(v.toPrecision(6)));
}

export interface SceneOptions {
  metric: string;
  overlay?: OverlayPoint[];
}

export function buildScene(rows: GridRow[], opts: SceneOptions): Scene {
  const metricRows = rows.filter((r) => r.metric === opts.metric);
  if (rows.length > 0 && metricRows.length === 0) {
    const seen = [...new Set(rows.map((r) => r.metric))].sort().join(", ");
    throw new Error(`metric '${opts.metric}' not present (file has: ${seen})`);
  }

  const algorithms = [...new Set(metricRows.map((r) => r.algorithm))].sort();
  const sValues = [...new Set(metricRows.map((r) => r.S))].sort((a, b) => a - b);
  const alphaValues = [...new Set(metricRows.map((r) => r.alpha))].sort((a, b) => a - b);
  const empty = metricRows.length === 0;
  const panels = empty ? ["no data"] : algorithms;
  const nCols = Math.max(1, alphaValues.length);
  const nRows = Math.max(1, sValues.length);

  const cells = new Map<string, number>();
  for (const r of metricRows) {
    const key = `${r.algorithm}|${r.S}|${r.alpha}`;
    if (cells.has(key)) {
      throw new Error(`duplicate cell for algorithm=${r.algorithm} S=${r.S} alpha=${r.alpha}`);
    }
    cells.set(key, r.value);
  }

  const panelW = nCols * CELL_W;
  const panelH = nRows * CELL_H;
  const width =
    MARGIN_LEFT +
    panels.length * panelW +
    (panels.length - 1) * PANEL_GAP +
    PANEL_GAP +
    COLORBAR_W +
    COLORBAR_LABELS;
  const height = MARGIN_TOP + panelH + MARGIN_BOTTOM;
  const prims: Prim[] = [];

  const first = metricRows[0] ?? rows[0];
  const provenance = first
    ? `${opts.metric} : ${first.experiment} ${first.dict} d=${first.d} K=${first.K} ` +
      `n=${first.trials} seed=${first.masterSeed}`
    : `${opts.metric} : no rows`;
  prims.push({
    kind: "text",
    x: MARGIN_LEFT,
    y: 12,
    text: provenance,
    size: 7,
    color: "#444444",
    anchor: "start",
  });

  // S grows upward: row 0 (top) is the largest S.
  const yOfRow = (rowIdx: number) => MARGIN_TOP + rowIdx * CELL_H;
  const xOfPanelCol = (panelIdx: number, colIdx: number) =>
    MARGIN_LEFT + panelIdx * (panelW + PANEL_GAP) + colIdx * CELL_W;

  panels.forEach((panelName, p) => {
    const x0 = MARGIN_LEFT + p * (panelW + PANEL_GAP);
    prims.push({
      kind: "text",
      x: x0 + Math.floor(panelW / 2),
      y: MARGIN_TOP - 6,
      text: panelName,
      size: 8,
      color: "#000000",
      anchor: "middle",
    });

    if (empty) {
      prims.push({ kind: "rect", x: x0, y: MARGIN_TOP, w: panelW, h: panelH, fill: "#f4f4f4" });
    } else {
      for (let row = 0; row < nRows; row++) {
        const S = sValues[nRows - 1 - row];
        for (let col = 0; col < nCols; col++) {
          const alpha = alphaValues[col];
          const x = xOfPanelCol(p, col);
          const y = yOfRow(row);
          const value = cells.get(`${panelName}|${S}|${alpha}`);
          if (value === undefined) {
            prims.push({ kind: "rect", x, y, w: CELL_W, h: CELL_H, fill: MISSING_FILL });
            prims.push({
              kind: "line",
              x1: x,
              y1: y + CELL_H,
              x2: x + CELL_W,
              y2: y,
              color: MISSING_STROKE,
              width: 1,
            });
          } else {
            prims.push({ kind: "rect", x, y, w: CELL_W, h: CELL_H, fill: colorFor(value) });
          }
        }
      }
    }

    // Panel frame.
    prims.push({ kind: "line", x1: x0, y1: MARGIN_TOP, x2: x0, y2: MARGIN_TOP + panelH, color: "#222222", width: 1 });
    prims.push({ kind: "line", x1: x0, y1: MARGIN_TOP + panelH, x2: x0 + panelW, y2: MARGIN_TOP + panelH, color: "#222222", width: 1 });

    // Alpha ticks along the bottom.
    if (!empty) {
      const step = Math.max(1, Math.ceil(nCols / 6));
      for (let col = 0; col < nCols; col += step) {
        const cx = xOfPanelCol(p, col) + Math.floor(CELL_W / 2);
        prims.push({ kind: "line", x1: cx, y1: MARGIN_TOP + panelH, x2: cx, y2: MARGIN_TOP + panelH + 3, color: "#222222", width: 1 });
        prims.push({
          kind: "text",
          x: cx,
          y: MARGIN_TOP + panelH + 13,
          text: fmt(alphaValues[col]),
          size: 6,
          color: "#333333",
          anchor: "middle",
        });
      }
    }
    prims.push({
      kind: "text",
      x: x0 + Math.floor(panelW / 2),
      y: height - 8,
      text: "alpha",
      size: 7,
      color: "#333333",
      anchor: "middle",
    });

    // Overlay boundary curves mapped by value onto the panel.
    if (!empty && opts.overlay && opts.overlay.length > 0 && alphaValues.length > 1 && sValues.length > 1) {
      const aMin = alphaValues[0];
      const aMax = alphaValues[nCols - 1];
      const sMin = sValues[0];
      const sMax = sValues[nRows - 1];
      const xOfAlpha = (a: number) =>
        x0 + Math.floor(CELL_W / 2) + ((a - aMin) / (aMax - aMin)) * (panelW - CELL_W);
      const yOfS = (s: number) =>
        MARGIN_TOP + Math.floor(CELL_H / 2) + ((sMax - s) / (sMax - sMin)) * (panelH - CELL_H);
      const labels = [...new Set(opts.overlay.map((pt) => pt.label))];
      labels.forEach((label, li) => {
        const pts = opts.overlay!
          .filter((pt) => pt.label === label)
          .sort((u, v) => u.alpha - v.alpha)
          .map((pt): [number, number] => [
            Math.round(xOfAlpha(pt.alpha) * 10) / 10,
            Math.round(yOfS(pt.S) * 10) / 10,
          ]);
        if (pts.length > 1) {
          prims.push({ kind: "poly", points: pts, color: OVERLAY_COLORS[li % OVERLAY_COLORS.length], width: 2 });
        }
      });
    }
  });

  // S ticks on the leftmost panel.
  if (!empty) {
    const step = Math.max(1, Math.ceil(nRows / 8));
    for (let row = nRows - 1; row >= 0; row -= step) {
      const cy = yOfRow(row) + Math.floor(CELL_H / 2);
      prims.push({ kind: "line", x1: MARGIN_LEFT - 3, y1: cy, x2: MARGIN_LEFT, y2: cy, color: "#222222", width: 1 });
      prims.push({
        kind: "text",
        x: MARGIN_LEFT - 6,
        y: cy + 3,
        text: String(sValues[nRows - 1 - row]),
        size: 6,
        color: "#333333",
        anchor: "end",
      });
    }
  }
  prims.push({ kind: "text", x: 10, y: MARGIN_TOP + Math.floor(panelH / 2), text: "S", size: 7, color: "#333333", anchor: "start" });

  // Shared colorbar, 0 at the bottom.
  const cbX = width - COLORBAR_LABELS - COLORBAR_W;
  const cbSteps = 24;
  const cbStep = panelH / cbSteps;
  for (let i = 0; i < cbSteps; i++) {
    const v = 1 - i / (cbSteps - 1);
    prims.push({
      kind: "rect",
      x: cbX,
      y: Math.round(MARGIN_TOP + i * cbStep),
      w: COLORBAR_W,
      h: Math.ceil(cbStep),
      fill: colorFor(v),
    });
  }
  for (const [frac, label] of [
    [0, "1"],
    [0.5, "0.5"],
    [1, "0"],
  ] as Array<[number, string]>) {
    prims.push({
      kind: "text",
      x: cbX + COLORBAR_W + 4,
      y: Math.round(MARGIN_TOP + frac * panelH) + 3,
      text: label,
      size: 6,
      color: "#333333",
      anchor: "start",
    });
  }

  return { width, height, background: "#ffffff", panels, prims };
}
