import type { BenchRow } from "./schema.js";

export type SweepKey = "sigma" | "n";

export interface SeriesPoint {
  x: number;
  mean: number;
  stderr: number;
}

export interface MethodSeries {
  method: string;
  points: SeriesPoint[];
}

/** Distinct values of the swept column, ascending. */
export function sweepValues(rows: BenchRow[], key: SweepKey): number[] {
  return [...new Set(rows.map((r) => r[key]))].sort((a, b) => a - b);
}

function mean(values: number[]): number {
  return values.reduce((acc, v) => acc + v, 0) / values.length;
}

function standardError(values: number[]): number {
  if (values.length < 2) return 0;
  const m = mean(values);
  const variance = values.reduce((acc, v) => acc + (v - m) ** 2, 0) / (values.length - 1);
  return Math.sqrt(variance / values.length);
}

/**
 * Per-method series of (swept value, mean, stderr) over trials.
 *
 * Methods come out alphabetically and points ascending in x, so the
 * rendered output is deterministic for a given input.
 */
export function groupSeries(
  rows: BenchRow[],
  key: SweepKey,
  value: (row: BenchRow) => number,
): MethodSeries[] {
  const methods = [...new Set(rows.map((r) => r.method))].sort();
  return methods.map((method) => {
    const mine = rows.filter((r) => r.method === method);
    const points = sweepValues(mine, key).map((x) => {
      const cell = mine.filter((r) => r[key] === x).map(value);
      return { x, mean: mean(cell), stderr: standardError(cell) };
    });
    return { method, points };
  });
}

/**
 * Least-squares slope of log(mean) against log(x).
 *
 * Returns null when fewer than two points have positive mean, since a
 * log-log fit is undefined there.
 */
export function fitLogLogSlope(points: SeriesPoint[]): number | null {
  const usable = points.filter((p) => p.x > 0 && p.mean > 0);
  if (usable.length < 2) return null;
  const xs = usable.map((p) => Math.log(p.x));
  const ys = usable.map((p) => Math.log(p.mean));
  const mx = mean(xs);
  const my = mean(ys);
  let cov = 0;
  let varX = 0;
  for (let i = 0; i < xs.length; i++) {
    cov += (xs[i] - mx) * (ys[i] - my);
    varX += (xs[i] - mx) ** 2;
  }
  return cov / varX;
}
