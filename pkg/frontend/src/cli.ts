#!/usr/bin/env node
/**
 * plotgen: render phase-grid CSV files into heatmap images.
 *
 * Usage:
 *   plotgen --in grid.csv --metric success --out fig.png [--overlay bounds.csv]
 *
 * One panel per algorithm; S on the vertical axis, alpha on the
 * horizontal axis, cell color on a fixed [0, 1] scale. `--in` may repeat
 * to merge several CSVs (cells must not collide). The output format
 * follows the extension: .svg or .png.
 *
 * Exit codes: 0 success, 1 usage error, 2 data or I/O error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { CsvError, OverlayPoint, parseGridCsv, parseOverlayCsv, GridRow } from "./csv.js";
import { buildScene } from "./scene.js";
import { renderPng } from "./png.js";
import { renderSvg } from "./svg.js";

export interface CliOptions {
  inputs: string[];
  metric: string;
  out: string;
  overlay?: string;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): CliOptions {
  const inputs: string[] = [];
  let metric: string | undefined;
  let out: string | undefined;
  let overlay: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      i++;
      if (i >= argv.length) throw new UsageError(`flag ${arg} needs a value`);
      return argv[i];
    };
    switch (arg) {
      case "--in":
        inputs.push(next());
        break;
      case "--metric":
        metric = next();
        break;
      case "--out":
        out = next();
        break;
      case "--overlay":
        overlay = next();
        break;
      case "--help":
      case "-h":
        throw new UsageError("help");
      default:
        throw new UsageError(`unknown flag ${arg}`);
    }
  }
  if (inputs.length === 0) throw new UsageError("--in is required");
  if (!metric) throw new UsageError("--metric is required");
  if (!out) throw new UsageError("--out is required");
  return { inputs, metric, out, overlay };
}

export function renderFile(opts: CliOptions): void {
  const rows: GridRow[] = [];
  for (const path of opts.inputs) {
    rows.push(...parseGridCsv(readFileSync(path, "utf-8"), path));
  }
  let overlay: OverlayPoint[] | undefined;
  if (opts.overlay) {
    overlay = parseOverlayCsv(readFileSync(opts.overlay, "utf-8"), opts.overlay);
  }
  const scene = buildScene(rows, { metric: opts.metric, overlay });
  if (opts.out.toLowerCase().endsWith(".svg")) {
    writeFileSync(opts.out, renderSvg(scene));
  } else {
    writeFileSync(opts.out, renderPng(scene));
  }
}

const USAGE =
  "usage: plotgen --in grid.csv --metric success --out fig.png [--overlay bounds.csv]";

export function runCli(argv: string[]): number {
  let opts: CliOptions;
  try {
    opts = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError && err.message === "help") {
      console.log(USAGE);
      return 0;
    }
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 1;
  }
  try {
    renderFile(opts);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 2;
  }
}

const isMain =
  typeof process !== "undefined" &&
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (isMain) {
  process.exit(runCli(process.argv.slice(2)));
}
