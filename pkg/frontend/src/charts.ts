import { el, svg } from "./dom.js";
import { formatBound } from "./filters.js";
import type { Range } from "./filters.js";
import { DIMENSIONS } from "./types.js";
import type { Dimension, DistributionsPayload } from "./types.js";

export interface ChartHandlers {
  onBrush: (dim: Dimension, lo: number, hi: number) => void;
  onBinClick: (dim: Dimension, lo: number, hi: number) => void;
  onClear: (dim: Dimension) => void;
}

const VIEW_W = 220;
const VIEW_H = 132;
const PLOT_X = 10;
const PLOT_W = 200;
const PLOT_TOP = 20;
const PLOT_BOTTOM = 112;

function plotFraction(svgEl: SVGSVGElement, clientX: number): number {
  const rect = svgEl.getBoundingClientRect();
  if (rect.width === 0) return 0;
  const viewX = ((clientX - rect.left) / rect.width) * VIEW_W;
  return Math.min(1, Math.max(0, (viewX - PLOT_X) / PLOT_W));
}

function buildChart(
  dim: Dimension,
  edges: number[],
  counts: number[],
  range: Range | undefined,
  handlers: ChartHandlers,
): HTMLElement {
  const maxCount = Math.max(1, ...counts);
  const canvas = svg("svg", {
    viewBox: `0 0 ${VIEW_W} ${VIEW_H}`,
    class: "chart-canvas",
    role: "img",
    "aria-label": `${dim} score distribution`,
  });
  canvas.appendChild(
    svg("line", {
      x1: String(PLOT_X),
      y1: String(PLOT_BOTTOM),
      x2: String(PLOT_X + PLOT_W),
      y2: String(PLOT_BOTTOM),
      class: "axis",
    }),
  );
  const n = counts.length;
  for (let i = 0; i < n; i++) {
    const count = counts[i] ?? 0;
    const barW = PLOT_W / n;
    const x = PLOT_X + i * barW;
    const h = (count / maxCount) * (PLOT_BOTTOM - PLOT_TOP);
    canvas.appendChild(
      svg("rect", {
        x: String(x + 1.5),
        y: String(PLOT_BOTTOM - h),
        width: String(barW - 3),
        height: String(h),
        class: "bar",
        "data-count": String(count),
      }),
    );
    canvas.appendChild(
      svg(
        "text",
        {
          x: String(x + barW / 2),
          y: String(PLOT_BOTTOM - h - 4),
          class: "count",
          "text-anchor": "middle",
          "data-count": String(count),
        },
        [String(count)],
      ),
    );
  }
  if (range) {
    canvas.appendChild(
      svg("rect", {
        x: String(PLOT_X + range.lo * PLOT_W),
        y: String(PLOT_TOP - 4),
        width: String((range.hi - range.lo) * PLOT_W),
        height: String(PLOT_BOTTOM - PLOT_TOP + 4),
        class: "brush",
      }),
    );
  }

  let dragStart: number | null = null;
  canvas.addEventListener("pointerdown", (ev) => {
    dragStart = plotFraction(canvas, ev.clientX);
    canvas.setPointerCapture?.(ev.pointerId);
  });
  canvas.addEventListener("pointerup", (ev) => {
    if (dragStart === null) return;
    const end = plotFraction(canvas, ev.clientX);
    const lo = Math.min(dragStart, end);
    const hi = Math.max(dragStart, end);
    dragStart = null;
    if (hi - lo < 0.01) {
      const k = Math.min(n - 1, Math.floor(lo * n));
      handlers.onBinClick(dim, edges[k] ?? 0, edges[k + 1] ?? 1);
    } else {
      handlers.onBrush(dim, lo, hi);
    }
  });

  const clearBtn = el("button", { class: "chart-clear", title: `clear ${dim} filter` }, ["×"]);
  clearBtn.addEventListener("click", () => handlers.onClear(dim));
  const caption = el("figcaption", {}, [
    el("span", { class: "chart-title" }, [dim]),
    el(
      "span",
      { class: "chart-range" },
      range ? [`${formatBound(range.lo)}–${formatBound(range.hi)}`] : [],
    ),
  ]);
  if (range) caption.appendChild(clearBtn);

  const figure = el("figure", { class: "chart", "data-dim": dim }, [caption]);
  figure.appendChild(canvas);
  return figure;
}

/** One bar chart per dimension in declaration order; bar labels show the
 * exact per-bin customer counts from the API payload. */
export function renderChartGrid(
  container: HTMLElement,
  payload: DistributionsPayload,
  ranges: Partial<Record<Dimension, Range>>,
  handlers: ChartHandlers,
): void {
  const charts = DIMENSIONS.map((dim) => {
    const hist = payload.distributions[dim];
    return buildChart(dim, hist.bin_edges, hist.counts, ranges[dim], handlers);
  });
  container.replaceChildren(...charts);
}

export function renderChartError(container: HTMLElement, message: string): void {
  container.replaceChildren(el("div", { class: "charts-error" }, [message]));
}
