/**
 * Parsers for the phase-grid CSV contract and the optional overlay CSV of
 * theory-boundary points. Errors always carry the 1-based line number.
 */

export const GRID_HEADER =
  "experiment,dict,d,K,S,alpha,algorithm,metric,value,trials,master_seed";

export interface GridRow {
  experiment: string;
  dict: string;
  d: number;
  K: number;
  S: number;
  alpha: number;
  algorithm: string;
  metric: string;
  value: number;
  trials: number;
  masterSeed: number;
}

export interface OverlayPoint {
  alpha: number;
  S: number;
  label: string;
}

export class CsvError extends Error {
  constructor(
    public readonly path: string,
    public readonly line: number,
    detail: string,
  ) {
    super(`${path}: line ${line}: ${detail}`);
  }
}

function num(raw: string, path: string, line: number, field: string): number {
  const v = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(v)) {
    throw new CsvError(path, line, `field '${field}' is not a number: '${raw}'`);
  }
  return v;
}

export function parseGridCsv(text: string, path: string): GridRow[] {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0] !== GRID_HEADER) {
    throw new CsvError(path, 1, `expected header '${GRID_HEADER}'`);
  }
  const rows: GridRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    const parts = line.split(",");
    if (parts.length !== 11) {
      throw new CsvError(path, i + 1, `expected 11 columns, got ${parts.length}`);
    }
    const n = i + 1;
    rows.push({
      experiment: parts[0],
      dict: parts[1],
      d: num(parts[2], path, n, "d"),
      K: num(parts[3], path, n, "K"),
      S: num(parts[4], path, n, "S"),
      alpha: num(parts[5], path, n, "alpha"),
      algorithm: parts[6],
      metric: parts[7],
      value: num(parts[8], path, n, "value"),
      trials: num(parts[9], path, n, "trials"),
      masterSeed: num(parts[10], path, n, "master_seed"),
    });
  }
  return rows;
}

/** Overlay format: header `alpha,S` or `alpha,S,label`, one point per row. */
export function parseOverlayCsv(text: string, path: string): OverlayPoint[] {
  const lines = text.split(/\r?\n/);
  const header = lines[0];
  if (header !== "alpha,S" && header !== "alpha,S,label") {
    throw new CsvError(path, 1, "expected header 'alpha,S' or 'alpha,S,label'");
  }
  const hasLabel = header === "alpha,S,label";
  const points: OverlayPoint[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    const parts = line.split(",");
    if (parts.length !== (hasLabel ? 3 : 2)) {
      throw new CsvError(path, i + 1, `expected ${hasLabel ? 3 : 2} columns`);
    }
    points.push({
      alpha: num(parts[0], path, i + 1, "alpha"),
      S: num(parts[1], path, i + 1, "S"),
      label: hasLabel ? parts[2] : "boundary",
    });
  }
  return points;
}
