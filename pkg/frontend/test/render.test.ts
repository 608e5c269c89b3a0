import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { GRID_HEADER, parseGridCsv } from "../src/csv.js";
import { renderPng } from "../src/png.js";
import { buildScene } from "../src/scene.js";
import { renderSvg } from "../src/svg.js";
import { runCli } from "../src/cli.js";

function fixtureCsv(): string {
  const rows: string[] = [GRID_HEADER];
  for (const alg of ["bp", "omp", "thr"]) {
    for (const S of [2, 4, 8, 16]) {
      for (const alpha of [0.75, 0.875, 1.0]) {
        const value = alg === "thr" ? 0 : alpha < 1 ? 1 : Math.max(0, 1 - S / 16);
        rows.push(`noiseless,dirac-dct,128,256,${S},${alpha},${alg},success,${value},200,7`);
      }
    }
  }
  return rows.join("\n") + "\n";
}

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "plotgen-"));
}

describe("renderSvg", () => {
  it("produces one titled panel per algorithm", () => {
    const rows = parseGridCsv(fixtureCsv(), "g.csv");
    const svg = renderSvg(buildScene(rows, { metric: "success" }));
    expect(svg).toContain(">bp</text>");
    expect(svg).toContain(">omp</text>");
    expect(svg).toContain(">thr</text>");
    expect(svg.startsWith("<svg ")).toBe(true);
  });

  it("is byte-stable across renders", () => {
    const rows = parseGridCsv(fixtureCsv(), "g.csv");
    const a = renderSvg(buildScene(rows, { metric: "success" }));
    const b = renderSvg(buildScene(rows, { metric: "success" }));
    expect(a).toBe(b);
  });
});

describe("renderPng", () => {
  it("emits a structurally valid PNG with the scene dimensions", () => {
    const rows = parseGridCsv(fixtureCsv(), "g.csv");
    const scene = buildScene(rows, { metric: "success" });
    const png = renderPng(scene);
    expect([...png.subarray(0, 8)]).toEqual([137, 80, 78, 71, 13, 10, 26, 10]);
    expect(png.subarray(12, 16).toString("ascii")).toBe("IHDR");
    expect(png.readUInt32BE(16)).toBe(scene.width);
    expect(png.readUInt32BE(20)).toBe(scene.height);
    expect(png.subarray(png.length - 8, png.length - 4).toString("ascii")).toBe("IEND");
  });

  it("is byte-stable across renders", () => {
    const rows = parseGridCsv(fixtureCsv(), "g.csv");
    const a = renderPng(buildScene(rows, { metric: "success" }));
    const b = renderPng(buildScene(rows, { metric: "success" }));
    expect(a.equals(b)).toBe(true);
  });
});

describe("runCli", () => {
  it("renders a three-panel SVG and PNG from a grid CSV", () => {
    const dir = tmp();
    const csv = join(dir, "grid.csv");
    writeFileSync(csv, fixtureCsv());
    const svgOut = join(dir, "fig.svg");
    const pngOut = join(dir, "fig.png");
    expect(runCli(["--in", csv, "--metric", "success", "--out", svgOut])).toBe(0);
    expect(runCli(["--in", csv, "--metric", "success", "--out", pngOut])).toBe(0);
    const svg = readFileSync(svgOut, "utf-8");
    expect((svg.match(/>(bp|omp|thr)<\/text>/g) ?? []).length).toBe(3);
    expect(readFileSync(pngOut).subarray(1, 4).toString("ascii")).toBe("PNG");
  });

  it("renders a header-only CSV into an empty panel, exit 0", () => {
    const dir = tmp();
    const csv = join(dir, "empty.csv");
    writeFileSync(csv, GRID_HEADER + "\n");
    const out = join(dir, "empty.svg");
    expect(runCli(["--in", csv, "--metric", "success", "--out", out])).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("no data");
  });

  it("reports malformed CSV with its row number and a nonzero exit", () => {
    const dir = tmp();
    const csv = join(dir, "bad.csv");
    writeFileSync(csv, GRID_HEADER + "\nnot,enough,columns\n");
    const out = join(dir, "x.svg");
    expect(runCli(["--in", csv, "--metric", "success", "--out", out])).toBe(2);
  });

  it("draws overlay curves from a bounds CSV", () => {
    const dir = tmp();
    const csv = join(dir, "grid.csv");
    writeFileSync(csv, fixtureCsv());
    const bounds = join(dir, "bounds.csv");
    writeFileSync(bounds, "alpha,S\n0.75,2\n0.875,8\n1,16\n");
    const out = join(dir, "fig.svg");
    expect(runCli(["--in", csv, "--metric", "success", "--out", out, "--overlay", bounds])).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("<polyline");
  });

  it("is pixel-deterministic end to end", () => {
    const dir = tmp();
    const csv = join(dir, "grid.csv");
    writeFileSync(csv, fixtureCsv());
    const out1 = join(dir, "a.png");
    const out2 = join(dir, "b.png");
    expect(runCli(["--in", csv, "--metric", "success", "--out", out1])).toBe(0);
    expect(runCli(["--in", csv, "--metric", "success", "--out", out2])).toBe(0);
    expect(readFileSync(out1).equals(readFileSync(out2))).toBe(true);
  });

  it("usage errors exit 1", () => {
    expect(runCli(["--metric", "success"])).toBe(1);
    expect(runCli(["--in", "x.csv", "--metric", "s", "--out", "y.svg", "--wat"])).toBe(1);
  });

  it("merges multiple inputs", () => {
    const dir = tmp();
    const a = join(dir, "a.csv");
    const b = join(dir, "b.csv");
    writeFileSync(a, GRID_HEADER + "\nnoiseless,dirac-dct,128,256,2,0.75,omp,success,1,200,7\n");
    writeFileSync(b, GRID_HEADER + "\nnoiseless,dirac-dct,128,256,2,0.75,bp,success,1,200,7\n");
    const out = join(dir, "merged.svg");
    expect(runCli(["--in", a, "--in", b, "--metric", "success", "--out", out])).toBe(0);
    const svg = readFileSync(out, "utf-8");
    expect(svg).toContain(">bp</text>");
    expect(svg).toContain(">omp</text>");
  });
});
