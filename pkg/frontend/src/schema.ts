/**
 * Parsing and validation of the sweep results table.
 *
 * The engine emits `results.csv` with exactly these columns:
 *
 *   beta,algorithm,policy,metric,data_fit,mean_width,novelty
 *
 * `beta` is empty on hardmax baseline rows; measure cells are empty where a
 * rank correlation is undefined (those render as gaps, never as zeros).
 * Anything that deviates from the schema is a SchemaError naming the column.
 */

import Papa from "papaparse";

export const EXPECTED_COLUMNS = [
  "beta",
  "algorithm",
  "policy",
  "metric",
  "data_fit",
  "mean_width",
  "novelty",
] as const;

export type Algorithm = "object" | "relation";
export type Policy = "hardmax" | "softmax";
export type Metric = "squared" | "absolute";
export type Measure = "data_fit" | "mean_width" | "novelty";

export const MEASURES: readonly Measure[] = ["data_fit", "mean_width", "novelty"];

export interface SweepRow {
  /** Inverse temperature; null on hardmax baseline rows. */
  beta: number | null;
  algorithm: Algorithm;
  policy: Policy;
  metric: Metric;
  /** Undefined correlations arrive as empty cells and stay null. */
  data_fit: number | null;
  mean_width: number | null;
  novelty: number | null;
}

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

const ALGORITHMS = new Set(["object", "relation"]);
const POLICIES = new Set(["hardmax", "softmax"]);
const METRICS = new Set(["squared", "absolute"]);

function parseCell(
  raw: string,
  column: string,
  line: number,
  options: { allowEmpty: boolean; min?: number }
): number | null {
  const text = raw.trim();
  if (text === "") {
    if (options.allowEmpty) return null;
    throw new SchemaError(`line ${line}: column '${column}' must not be empty`);
  }
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`line ${line}: column '${column}' has non-numeric value '${raw}'`);
  }
  if (options.min !== undefined && value < options.min) {
    throw new SchemaError(`line ${line}: column '${column}' must be >= ${options.min}, got ${raw}`);
  }
  return value;
}

/** Parse and validate a results CSV; throws SchemaError with column diagnostics. */
export function parseSweepTable(csvText: string): SweepRow[] {
  const parsed = Papa.parse<string[]>(csvText.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`CSV parse error at row ${(e.row ?? 0) + 1}: ${e.message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new SchemaError("empty results table: no header row");
  }
  const header = rows[0].map((c) => c.trim());
  if (
    header.length !== EXPECTED_COLUMNS.length ||
    header.some((col, i) => col !== EXPECTED_COLUMNS[i])
  ) {
    const expected = EXPECTED_COLUMNS.join(",");
    const mismatches = EXPECTED_COLUMNS.map((want, i) => {
      const got = header[i] ?? "<missing>";
      return got === want ? null : `column ${i + 1}: expected '${want}', found '${got}'`;
    }).filter((m): m is string => m !== null);
    const extra =
      header.length > EXPECTED_COLUMNS.length
        ? [`unexpected extra column(s): ${header.slice(EXPECTED_COLUMNS.length).join(", ")}`]
        : [];
    throw new SchemaError(
      `header mismatch (expected '${expected}'): ${[...mismatches, ...extra].join("; ")}`
    );
  }
  if (rows.length === 1) {
    throw new SchemaError("empty results table: header but no data rows");
  }

  const out: SweepRow[] = [];
  for (let r = 1; r < rows.length; r++) {
    const line = r + 1;
    const cells = rows[r];
    if (cells.length !== EXPECTED_COLUMNS.length) {
      throw new SchemaError(
        `line ${line}: expected ${EXPECTED_COLUMNS.length} cells, found ${cells.length}`
      );
    }
    const [betaRaw, algorithm, policy, metric, fitRaw, widthRaw, noveltyRaw] = cells.map((c) =>
      c.trim()
    );
    if (!ALGORITHMS.has(algorithm)) {
      throw new SchemaError(`line ${line}: column 'algorithm' has unknown value '${algorithm}'`);
    }
    if (!POLICIES.has(policy)) {
      throw new SchemaError(`line ${line}: column 'policy' has unknown value '${policy}'`);
    }
    if (!METRICS.has(metric)) {
      throw new SchemaError(`line ${line}: column 'metric' has unknown value '${metric}'`);
    }
    const beta = parseCell(betaRaw, "beta", line, { allowEmpty: true, min: 0 });
    if (policy === "hardmax" && beta !== null) {
      throw new SchemaError(`line ${line}: column 'beta' must be empty on hardmax rows`);
    }
    if (policy === "softmax" && beta === null) {
      throw new SchemaError(`line ${line}: column 'beta' must be set on softmax rows`);
    }
    out.push({
      beta,
      algorithm: algorithm as Algorithm,
      policy: policy as Policy,
      metric: metric as Metric,
      data_fit: parseCell(fitRaw, "data_fit", line, { allowEmpty: true }),
      mean_width: parseCell(widthRaw, "mean_width", line, { allowEmpty: true }),
      novelty: parseCell(noveltyRaw, "novelty", line, { allowEmpty: true }),
    });
  }
  return out;
}
