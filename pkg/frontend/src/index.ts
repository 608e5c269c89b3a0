export { CsvError, GRID_HEADER, parseGridCsv, parseOverlayCsv } from "./csv.js";
export type { GridRow, OverlayPoint } from "./csv.js";
export { buildScene, colorFor } from "./scene.js";
export type { Scene, Prim } from "./scene.js";
export { renderSvg } from "./svg.js";
export { encodePng, renderPng, Raster } from "./png.js";
export { renderFile, runCli } from "./cli.js";
