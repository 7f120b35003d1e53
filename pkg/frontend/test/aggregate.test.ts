import { describe, expect, it } from "vitest";
import { fitLogLogSlope, groupSeries, sweepValues } from "../src/aggregate.js";
import type { BenchRow } from "../src/schema.js";

function row(method: string, sigma: number, n: number, trial: number, mse: number): BenchRow {
  return { method, sigma, n, trial, mse, wallTimeSeconds: 0.5, emIters: null };
}

describe("sweepValues", () => {
  it("returns distinct values ascending", () => {
    const rows = [row("a", 8, 100, 0, 1), row("a", 4, 100, 0, 1), row("a", 8, 100, 1, 1)];
    expect(sweepValues(rows, "sigma")).toEqual([4, 8]);
    expect(sweepValues(rows, "n")).toEqual([100]);
  });
});

describe("groupSeries", () => {
  it("computes trial means and standard errors per sweep point", () => {
    const rows = [
      row("fast_mle", 4, 100, 0, 1),
      row("fast_mle", 4, 100, 1, 2),
      row("fast_mle", 4, 100, 2, 3),
      row("fast_mle", 8, 100, 0, 10),
    ];
    const [series] = groupSeries(rows, "sigma", (r) => r.mse);
    expect(series.method).toBe("fast_mle");
    expect(series.points[0].mean).toBeCloseTo(2, 12);
    // sample sd of {1,2,3} is 1, so the standard error is 1/sqrt(3)
    expect(series.points[0].stderr).toBeCloseTo(1 / Math.sqrt(3), 12);
    expect(series.points[1]).toEqual({ x: 8, mean: 10, stderr: 0 });
  });

  it("orders methods alphabetically", () => {
    const rows = [row("em_random", 4, 100, 0, 1), row("em_warm", 4, 100, 0, 1)];
    expect(groupSeries(rows, "sigma", (r) => r.mse).map((s) => s.method)).toEqual([
      "em_random",
      "em_warm",
    ]);
  });
});

describe("fitLogLogSlope", () => {
  it("recovers an exact power law", () => {
    const points = [10000, 30000, 100000].map((n) => ({ x: n, mean: 3 / n, stderr: 0 }));
    expect(fitLogLogSlope(points)).toBeCloseTo(-1, 12);
  });

  it("recovers a rising power law on runtime-like data", () => {
    const points = [1000, 2000, 4000].map((n) => ({ x: n, mean: n / 500, stderr: 0 }));
    expect(fitLogLogSlope(points)).toBeCloseTo(1, 12);
  });

  it("returns null with fewer than two positive points", () => {
    expect(fitLogLogSlope([{ x: 100, mean: 1, stderr: 0 }])).toBeNull();
    expect(
      fitLogLogSlope([
        { x: 100, mean: 0, stderr: 0 },
        { x: 200, mean: -1, stderr: 0 },
      ]),
    ).toBeNull();
  });
});
