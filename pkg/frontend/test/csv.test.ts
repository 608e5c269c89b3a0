import { describe, expect, it } from "vitest";
import { CsvError, GRID_HEADER, parseGridCsv, parseOverlayCsv } from "../src/csv.js";

const ROW = "noiseless,dirac-dct,128,256,2,0.75,omp,success,0.995,200,7";

describe("parseGridCsv", () => {
  it("parses typed rows", () => {
    const rows = parseGridCsv(`${GRID_HEADER}\n${ROW}\n`, "grid.csv");
    expect(rows).toHaveLength(1);
    expect(rows[0]).toMatchObject({
      experiment: "noiseless",
      dict: "dirac-dct",
      d: 128,
      K: 256,
      S: 2,
      alpha: 0.75,
      algorithm: "omp",
      metric: "success",
      value: 0.995,
      trials: 200,
      masterSeed: 7,
    });
  });

  it("accepts a header-only file", () => {
    expect(parseGridCsv(`${GRID_HEADER}\n`, "empty.csv")).toEqual([]);
  });

  it("rejects a wrong header with line 1", () => {
    expect(() => parseGridCsv("a,b,c\n", "bad.csv")).toThrowError(/bad\.csv: line 1/);
  });

  it("rejects a short row with its line number", () => {
    const text = `${GRID_HEADER}\n${ROW}\nnoiseless,dirac-dct,128\n`;
    expect(() => parseGridCsv(text, "bad.csv")).toThrowError(/line 3/);
  });

  it("rejects non-numeric fields naming the field", () => {
    const text = `${GRID_HEADER}\nnoiseless,dirac-dct,128,256,2,??,omp,success,1,200,7\n`;
    try {
      parseGridCsv(text, "bad.csv");
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(CsvError);
      expect((err as CsvError).line).toBe(2);
      expect((err as Error).message).toContain("alpha");
    }
  });
});

describe("parseOverlayCsv", () => {
  it("parses two-column points with a default label", () => {
    const pts = parseOverlayCsv("alpha,S\n0.75,8\n0.8,10\n", "b.csv");
    expect(pts).toEqual([
      { alpha: 0.75, S: 8, label: "boundary" },
      { alpha: 0.8, S: 10, label: "boundary" },
    ]);
  });

  it("parses labelled points", () => {
    const pts = parseOverlayCsv("alpha,S,label\n0.75,8,omp\n", "b.csv");
    expect(pts[0].label).toBe("omp");
  });

  it("rejects a bad header", () => {
    expect(() => parseOverlayCsv("x,y\n", "b.csv")).toThrowError(/line 1/);
  });
});
