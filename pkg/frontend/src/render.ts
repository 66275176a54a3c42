/**
 * SVG/PNG rendering: echarts in server-side SVG mode, rasterized by resvg.
 *
 * Files are written only after both documents render successfully, so a
 * malformed input never leaves partial output behind.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, extname } from "node:path";

import { Resvg } from "@resvg/resvg-js";
import * as echarts from "echarts";

import { buildFigureModel, chartOptions, FigureModel } from "./figure.js";
import { parseSweepTable } from "./schema.js";

export const FIGURE_WIDTH = 960;
export const FIGURE_HEIGHT = 600;

export function figureSvg(model: FigureModel): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: FIGURE_WIDTH,
    height: FIGURE_HEIGHT,
  });
  try {
    chart.setOption(chartOptions(model));
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}

export function svgToPng(svg: string): Buffer {
  const resvg = new Resvg(svg, {
    fitTo: { mode: "width", value: FIGURE_WIDTH * 2 }, // 2x raster for legibility
    font: { loadSystemFonts: true },
    background: "#ffffff",
  });
  return resvg.render().asPng();
}

export interface RenderResult {
  pngPath: string;
  svgPath: string;
  seriesCount: number;
}

export function vectorPathFor(rasterPath: string): string {
  const ext = extname(rasterPath);
  return ext ? rasterPath.slice(0, -ext.length) + ".svg" : rasterPath + ".svg";
}

/** Parse, build, render, and write both files; throws before any write on bad input. */
export function renderFigure(csvText: string, outPath: string): RenderResult {
  const rows = parseSweepTable(csvText);
  const model = buildFigureModel(rows);
  const svg = figureSvg(model);
  const png = svgToPng(svg);

  const svgPath = vectorPathFor(outPath);
  mkdirSync(dirname(outPath) || ".", { recursive: true });
  writeFileSync(outPath, png);
  writeFileSync(svgPath, svg, "utf-8");
  return { pngPath: outPath, svgPath, seriesCount: model.series.length };
}
