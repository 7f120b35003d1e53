import * as echarts from "echarts";
import type { MethodSeries } from "./aggregate.js";

// Default echarts line palette, fixed here so each method's error bars
// share its line color.
const PALETTE = ["#5470c6", "#91cc75", "#fac858", "#ee6666", "#73c0de", "#3ba272", "#fc8452"];

export interface PanelSpec {
  title: string;
  xName: string;
  yName: string;
  xLog: boolean;
  series: MethodSeries[];
  /** Extra text lines drawn inside the plot area, e.g. fitted slopes. */
  annotations?: string[];
}

function errorBarSeries(series: MethodSeries, color: string): echarts.CustomSeriesOption {
  const data = series.points
    .filter((p) => p.mean > 0)
    .map((p) => {
      // Log axes cannot show a nonpositive lower whisker; clamp it just
      // under the mean instead of dropping the bar entirely.
      const lo = p.mean - p.stderr > 0 ? p.mean - p.stderr : p.mean * 1e-3;
      return [p.x, lo, p.mean + p.stderr];
    });
  return {
    type: "custom",
    name: series.method,
    silent: true,
    data,
    z: 3,
    renderItem: (_params, api) => {
      const x = api.value(0) as number;
      const top = api.coord([x, api.value(2) as number]);
      const bottom = api.coord([x, api.value(1) as number]);
      const cap = 4;
      const style = { stroke: color, fill: "none", lineWidth: 1.2 };
      return {
        type: "group",
        children: [
          {
            type: "line",
            shape: { x1: top[0], y1: top[1], x2: bottom[0], y2: bottom[1] },
            style,
          },
          {
            type: "line",
            shape: { x1: top[0] - cap, y1: top[1], x2: top[0] + cap, y2: top[1] },
            style,
          },
          {
            type: "line",
            shape: { x1: bottom[0] - cap, y1: bottom[1], x2: bottom[0] + cap, y2: bottom[1] },
            style,
          },
        ],
      };
    },
  };
}

/** Render one panel to an SVG string via the echarts server-side renderer. */
export function renderPanelSvg(spec: PanelSpec): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: 800,
    height: 600,
  });

  const seriesOptions: echarts.SeriesOption[] = [];
  spec.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    seriesOptions.push({
      type: "line",
      name: s.method,
      data: s.points.filter((p) => p.mean > 0).map((p) => [p.x, p.mean]),
      color,
      symbolSize: 6,
    });
    seriesOptions.push(errorBarSeries(s, color));
  });

  const annotations = (spec.annotations ?? []).map((text, i) => ({
    type: "text" as const,
    left: 90,
    top: 80 + 20 * i,
    style: { text, fontSize: 13, fill: "#444444" },
  }));

  chart.setOption({
    animation: false,
    title: { text: spec.title, left: "center" },
    legend: { data: spec.series.map((s) => s.method), top: 32 },
    grid: { left: 80, right: 40, top: 70, bottom: 60 },
    xAxis: {
      type: spec.xLog ? "log" : "value",
      name: spec.xName,
      nameLocation: "middle",
      nameGap: 30,
    },
    yAxis: {
      type: "log",
      name: spec.yName,
      nameLocation: "middle",
      nameGap: 55,
    },
    series: seriesOptions,
    graphic: annotations,
  });

  const svg = chart.renderToSVGString();
  chart.dispose();
  return svg;
}
