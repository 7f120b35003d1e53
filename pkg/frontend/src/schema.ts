import Papa from "papaparse";

/** One benchmark record, one estimator run on one simulated data set. */
export interface BenchRow {
  method: string;
  sigma: number;
  n: number;
  trial: number;
  mse: number;
  wallTimeSeconds: number;
  /** Iteration count for EM methods; null for the single-pass estimator. */
  emIters: number | null;
}

export const REQUIRED_COLUMNS = [
  "method",
  "sigma",
  "n",
  "trial",
  "mse",
  "wall_time_seconds",
  "em_iters",
] as const;

export class SchemaError extends Error {
  readonly column: string;

  constructor(column: string, message: string) {
    super(message);
    this.name = "SchemaError";
    this.column = column;
  }
}

function requireNumber(raw: string | undefined, column: string, row: number): number {
  const text = (raw ?? "").trim();
  if (text === "") {
    throw new SchemaError(column, `row ${row}: column "${column}" is empty`);
  }
  const value = Number(text);
  if (!Number.isFinite(value)) {
    throw new SchemaError(column, `row ${row}: column "${column}" is not numeric (got "${text}")`);
  }
  return value;
}

/**
 * Parse benchmark CSV text into typed rows.
 *
 * The header must contain every required column; extras are ignored.
 * A header-only file parses to an empty list.  Any malformed cell
 * raises a SchemaError naming the offending column.
 */
export function parseBenchCsv(text: string): BenchRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  for (const column of REQUIRED_COLUMNS) {
    if (!fields.includes(column)) {
      throw new SchemaError(column, `missing required column "${column}"`);
    }
  }

  return parsed.data.map((record, index) => {
    const row = index + 2; // 1-based line number, after the header
    const method = (record.method ?? "").trim();
    if (method === "") {
      throw new SchemaError("method", `row ${row}: column "method" is empty`);
    }
    const emRaw = (record.em_iters ?? "").trim();
    return {
      method,
      sigma: requireNumber(record.sigma, "sigma", row),
      n: requireNumber(record.n, "n", row),
      trial: requireNumber(record.trial, "trial", row),
      mse: requireNumber(record.mse, "mse", row),
      wallTimeSeconds: requireNumber(record.wall_time_seconds, "wall_time_seconds", row),
      emIters: emRaw === "" ? null : requireNumber(record.em_iters, "em_iters", row),
    };
  });
}
