import * as fs from "node:fs";
import * as path from "node:path";
import { fitLogLogSlope, groupSeries, sweepValues } from "./aggregate.js";
import type { MethodSeries, SweepKey } from "./aggregate.js";
import { renderPanelSvg } from "./render.js";
import type { BenchRow } from "./schema.js";

export interface PanelReport {
  written: string[];
  notices: string[];
}

const PANEL_FILES = {
  errorVsSigma: "error_vs_sigma.svg",
  timeVsSigma: "time_vs_sigma.svg",
  errorVsN: "error_vs_n.svg",
  timeVsN: "time_vs_n.svg",
} as const;

function slopeAnnotations(series: MethodSeries[]): string[] {
  const lines: string[] = [];
  for (const s of series) {
    const slope = fitLogLogSlope(s.points);
    if (slope !== null) {
      lines.push(`${s.method} slope: ${slope.toFixed(2)}`);
    }
  }
  return lines;
}

function writePanel(outDir: string, file: string, svg: string, report: PanelReport): void {
  fs.writeFileSync(path.join(outDir, file), svg);
  report.written.push(file);
}

/**
 * Render every panel the CSV's sweep structure supports.
 *
 * A sweep needs at least two distinct values of its variable; anything
 * less produces a notice instead of a panel.  Output filenames are
 * fixed, so repeated runs overwrite rather than accumulate.
 */
export function renderAllPanels(rows: BenchRow[], outDir: string): PanelReport {
  const report: PanelReport = { written: [], notices: [] };
  fs.mkdirSync(outDir, { recursive: true });

  const renderSweep = (
    key: SweepKey,
    xName: string,
    xLog: boolean,
    errorFile: string,
    timeFile: string,
  ): void => {
    const values = sweepValues(rows, key);
    if (values.length < 2) {
      report.notices.push(
        `no ${key} sweep in the input (${values.length} distinct value${
          values.length === 1 ? "" : "s"
        }); skipping ${errorFile} and ${timeFile}`,
      );
      return;
    }
    const errorSeries = groupSeries(rows, key, (r) => r.mse);
    const timeSeries = groupSeries(rows, key, (r) => r.wallTimeSeconds);
    // Slope annotations only make sense on log-log axes, i.e. the n panels.
    const annotate = xLog ? slopeAnnotations : () => [];
    writePanel(
      outDir,
      errorFile,
      renderPanelSvg({
        title: `Mean MSE vs ${xName}`,
        xName,
        yName: "mean MSE",
        xLog,
        series: errorSeries,
        annotations: annotate(errorSeries),
      }),
      report,
    );
    writePanel(
      outDir,
      timeFile,
      renderPanelSvg({
        title: `Mean wall time vs ${xName}`,
        xName,
        yName: "mean wall time (s)",
        xLog,
        series: timeSeries,
        annotations: annotate(timeSeries),
      }),
      report,
    );
  };

  renderSweep("sigma", "sigma", false, PANEL_FILES.errorVsSigma, PANEL_FILES.timeVsSigma);
  renderSweep("n", "n", true, PANEL_FILES.errorVsN, PANEL_FILES.timeVsN);
  return report;
}
