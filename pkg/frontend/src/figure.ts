/**
 * From validated sweep rows to a declarative figure model.
 *
 * One figure carries all three measure families in a fixed color convention:
 * data fit gray, mean width orange, novelty blue.  Relation-based series are
 * solid, object-based dashed.  Softmax points form beta-ordered curves on a
 * log axis; hardmax rows become flat baseline markers placed just left of
 * the curve domain (circle = object, triangle = relation).  Undefined
 * measures stay null and render as gaps.
 *
 * The model is a pure function of the parsed rows, which keeps rendering
 * byte-reproducible and testable without a DOM.
 */

import { Measure, MEASURES, SweepRow } from "./schema.js";

export const MEASURE_COLORS: Record<Measure, string> = {
  data_fit: "#6e6e6e",
  mean_width: "#e8861a",
  novelty: "#2a6fbb",
};

export const MEASURE_LABELS: Record<Measure, string> = {
  data_fit: "data fit",
  mean_width: "mean width",
  novelty: "novelty",
};

export interface CurveSeries {
  kind: "curve";
  id: string;
  label: string;
  measure: Measure;
  algorithm: "object" | "relation";
  metric: string;
  color: string;
  dashed: boolean;
  axis: "correlation" | "width";
  /** beta-ascending; y === null marks a gap (undefined correlation) */
  points: Array<[number, number | null]>;
}

export interface BaselineSeries {
  kind: "baseline";
  id: string;
  label: string;
  measure: Measure;
  algorithm: "object" | "relation";
  metric: string;
  color: string;
  symbol: "circle" | "triangle";
  axis: "correlation" | "width";
  x: number;
  y: number | null;
}

export type FigureSeries = CurveSeries | BaselineSeries;

export interface FigureModel {
  series: FigureSeries[];
  /** log-axis domain covering the curves and the baseline slot */
  xMin: number;
  xMax: number;
  widthAxisMax: number;
}

const axisOf = (measure: Measure) => (measure === "mean_width" ? "width" : "correlation");

export function buildFigureModel(rows: SweepRow[]): FigureModel {
  const metrics = [...new Set(rows.map((r) => r.metric))].sort();
  const betas = rows.filter((r) => r.beta !== null).map((r) => r.beta as number);
  const betaMin = betas.length ? Math.min(...betas) : 1.0;
  const betaMax = betas.length ? Math.max(...betas) : 1.0;
  const xBaseline = betaMin / 1.6; // markers sit left of the curve domain
  const series: FigureSeries[] = [];

  for (const metric of metrics) {
    const metricSuffix = metrics.length > 1 ? ` (${metric})` : "";
    for (const measure of MEASURES) {
      for (const algorithm of ["relation", "object"] as const) {
        const curveRows = rows
          .filter(
            (r) =>
              r.metric === metric &&
              r.algorithm === algorithm &&
              r.policy === "softmax" &&
              r.beta !== null
          )
          .sort((a, b) => (a.beta as number) - (b.beta as number));
        if (curveRows.length > 0) {
          series.push({
            kind: "curve",
            id: `${measure}/${algorithm}/softmax/${metric}`,
            label: `${MEASURE_LABELS[measure]}, ${algorithm}${metricSuffix}`,
            measure,
            algorithm,
            metric,
            color: MEASURE_COLORS[measure],
            dashed: algorithm === "object",
            axis: axisOf(measure),
            points: curveRows.map((r) => [r.beta as number, r[measure]]),
          });
        }
        const base = rows.find(
          (r) => r.metric === metric && r.algorithm === algorithm && r.policy === "hardmax"
        );
        if (base !== undefined) {
          series.push({
            kind: "baseline",
            id: `${measure}/${algorithm}/hardmax/${metric}`,
            label: `${MEASURE_LABELS[measure]}, ${algorithm} hardmax${metricSuffix}`,
            measure,
            algorithm,
            metric,
            color: MEASURE_COLORS[measure],
            symbol: algorithm === "relation" ? "triangle" : "circle",
            axis: axisOf(measure),
            x: xBaseline,
            y: base[measure],
          });
        }
      }
    }
  }

  const widths = rows
    .map((r) => r.mean_width)
    .filter((w): w is number => w !== null && Number.isFinite(w));
  return {
    series,
    xMin: xBaseline / 1.4,
    xMax: betaMax * 1.25,
    widthAxisMax: Math.max(1, Math.ceil(widths.length ? Math.max(...widths) : 1)),
  };
}

/** echarts option for the figure model; everything static, no animation. */
export function chartOptions(model: FigureModel): Record<string, unknown> {
  const echartsSeries = model.series.map((s) => {
    const yAxisIndex = s.axis === "correlation" ? 0 : 1;
    if (s.kind === "curve") {
      return {
        name: s.label,
        type: "line",
        yAxisIndex,
        data: s.points.map(([x, y]) => [x, y]),
        connectNulls: false,
        showSymbol: true,
        symbol: "emptyCircle",
        symbolSize: 4,
        lineStyle: { color: s.color, type: s.dashed ? "dashed" : "solid", width: 2 },
        itemStyle: { color: s.color },
        emphasis: { disabled: true },
      };
    }
    return {
      name: s.label,
      type: "scatter",
      yAxisIndex,
      data: s.y === null ? [] : [[s.x, s.y]],
      symbol: s.symbol,
      symbolSize: 11,
      itemStyle: { color: s.color, borderColor: "#222", borderWidth: 1 },
      emphasis: { disabled: true },
    };
  });

  return {
    animation: false,
    backgroundColor: "#ffffff",
    title: {
      text: "Comprehension measures vs inverse temperature",
      left: "center",
      textStyle: { fontSize: 15 },
    },
    grid: { left: 70, right: 70, top: 50, bottom: 120 },
    legend: { bottom: 0, itemWidth: 22, textStyle: { fontSize: 10 } },
    xAxis: {
      type: "log",
      name: "beta",
      nameLocation: "middle",
      nameGap: 28,
      min: model.xMin,
      max: model.xMax,
    },
    yAxis: [
      {
        type: "value",
        name: "rank correlation",
        min: -1,
        max: 1,
        position: "left",
      },
      {
        type: "value",
        name: "mean width",
        min: 0,
        max: model.widthAxisMax,
        position: "right",
        splitLine: { show: false },
      },
    ],
    series: echartsSeries,
  };
}
