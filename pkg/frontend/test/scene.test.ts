import { describe, expect, it } from "vitest";
import { GRID_HEADER, parseGridCsv } from "../src/csv.js";
import { buildScene, colorFor } from "../src/scene.js";

function grid(rows: string[]): string {
  return [GRID_HEADER, ...rows].join("\n") + "\n";
}

function row(S: number, alpha: number, alg: string, value: number, metric = "success"): string {
  return `noiseless,dirac-dct,128,256,${S},${alpha},${alg},${metric},${value},200,7`;
}

describe("buildScene", () => {
  it("creates one panel per algorithm, sorted", () => {
    const rows = parseGridCsv(
      grid([row(2, 0.75, "omp", 1), row(2, 0.75, "bp", 1), row(2, 0.75, "thr", 0)]),
      "g.csv",
    );
    const scene = buildScene(rows, { metric: "success" });
    expect(scene.panels).toEqual(["bp", "omp", "thr"]);
  });

  it("renders an empty placeholder panel for a header-only file", () => {
    const scene = buildScene([], { metric: "success" });
    expect(scene.panels).toEqual(["no data"]);
    expect(scene.prims.some((p) => p.kind === "rect")).toBe(true);
  });

  it("maps all-ones to a single uniform colour", () => {
    const rows = parseGridCsv(
      grid([row(2, 0.75, "omp", 1), row(2, 1.0, "omp", 1), row(4, 0.75, "omp", 1), row(4, 1.0, "omp", 1)]),
      "g.csv",
    );
    const scene = buildScene(rows, { metric: "success" });
    // Cells are 15x11; exclude the colorbar segments.
    const cellFills = scene.prims
      .filter((p) => p.kind === "rect" && (p as { w: number }).w === 15)
      .map((p) => (p as { fill: string }).fill);
    expect(cellFills).toHaveLength(4);
    expect(new Set(cellFills)).toEqual(new Set([colorFor(1)]));
  });

  it("marks missing cells with a gap, never interpolates", () => {
    const rows = parseGridCsv(
      grid([row(2, 0.75, "omp", 1), row(2, 1.0, "omp", 1), row(4, 0.75, "omp", 0.5)]),
      "g.csv",
    );
    const scene = buildScene(rows, { metric: "success" });
    const gapRects = scene.prims.filter(
      (p) => p.kind === "rect" && (p as { fill: string }).fill === "#e0e0e0",
    );
    expect(gapRects).toHaveLength(1);
  });

  it("rejects a metric that is absent from a non-empty file", () => {
    const rows = parseGridCsv(grid([row(2, 0.75, "omp", 1)]), "g.csv");
    expect(() => buildScene(rows, { metric: "latency" })).toThrowError(/metric 'latency'/);
  });

  it("rejects duplicate cells", () => {
    const rows = parseGridCsv(grid([row(2, 0.75, "omp", 1), row(2, 0.75, "omp", 0)]), "g.csv");
    expect(() => buildScene(rows, { metric: "success" })).toThrowError(/duplicate cell/);
  });

  it("draws overlay polylines when points are provided", () => {
    const rows = parseGridCsv(
      grid([row(2, 0.75, "omp", 1), row(2, 1.0, "omp", 1), row(4, 0.75, "omp", 1), row(4, 1.0, "omp", 0)]),
      "g.csv",
    );
    const scene = buildScene(rows, {
      metric: "success",
      overlay: [
        { alpha: 0.75, S: 2, label: "b" },
        { alpha: 1.0, S: 4, label: "b" },
      ],
    });
    expect(scene.prims.some((p) => p.kind === "poly")).toBe(true);
  });

  it("is deterministic", () => {
    const rows = parseGridCsv(grid([row(2, 0.75, "omp", 0.25), row(4, 0.75, "omp", 0.75)]), "g.csv");
    const a = buildScene(rows, { metric: "success" });
    const b = buildScene(rows, { metric: "success" });
    expect(JSON.stringify(a)).toBe(JSON.stringify(b));
  });
});

describe("colorFor", () => {
  it("clamps to the unit interval", () => {
    expect(colorFor(-1)).toBe(colorFor(0));
    expect(colorFor(2)).toBe(colorFor(1));
  });

  it("hits the ramp endpoints", () => {
    expect(colorFor(0)).toBe("#440154");
    expect(colorFor(1)).toBe("#fde725");
  });
});
