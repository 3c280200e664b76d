// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderChartError, renderChartGrid } from "../src/charts.js";
import type { ChartHandlers } from "../src/charts.js";
import { DIMENSIONS } from "../src/types.js";
import type { DistributionsPayload } from "../src/types.js";

function payloadWithCounts(counts: number[]): DistributionsPayload {
  const bins = counts.length;
  const edges = Array.from({ length: bins + 1 }, (_, i) => i / bins);
  const distributions = Object.fromEntries(
    DIMENSIONS.map((d) => [d, { bin_edges: edges, counts: [...counts] }]),
  ) as DistributionsPayload["distributions"];
  return {
    brand: "delta",
    mode: "ica",
    bins,
    users: counts.reduce((a, b) => a + b, 0),
    distributions,
  };
}

const noHandlers: ChartHandlers = {
  onBrush: () => {},
  onBinClick: () => {},
  onClear: () => {},
};

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.replaceChildren(container);
});

describe("renderChartGrid", () => {
  it("renders an empty cohort as eight charts of zero-height bars", () => {
    renderChartGrid(container, payloadWithCounts([0, 0, 0, 0, 0]), {}, noHandlers);
    const charts = container.querySelectorAll(".chart");
    expect(charts).toHaveLength(8);
    const bars = container.querySelectorAll("rect.bar");
    expect(bars).toHaveLength(40);
    bars.forEach((bar) => {
      expect(bar.getAttribute("height")).toBe("0");
      expect(bar.getAttribute("data-count")).toBe("0");
    });
    const labels = container.querySelectorAll("text.count");
    labels.forEach((label) => expect(label.textContent).toBe("0"));
  });

  it("labels every bar with its exact count", () => {
    renderChartGrid(container, payloadWithCounts([1, 0, 1, 0, 1]), {}, noHandlers);
    const chart = container.querySelector('.chart[data-dim="buy"]');
    const labels = Array.from(
      chart!.querySelectorAll("text.count"),
      (t) => t.textContent,
    );
    expect(labels).toEqual(["1", "0", "1", "0", "1"]);
    const heights = Array.from(chart!.querySelectorAll("rect.bar"), (b) =>
      Number(b.getAttribute("height")),
    );
    expect(heights[0]).toBeGreaterThan(0);
    expect(heights[1]).toBe(0);
    expect(heights[0]).toBe(heights[2]);
  });

  it("draws the brush overlay at the range's plot coordinates", () => {
    renderChartGrid(
      container,
      payloadWithCounts([2, 2, 2, 2, 2]),
      { confidence: { lo: 0.2, hi: 0.6 } },
      noHandlers,
    );
    const overlay = container.querySelector('.chart[data-dim="confidence"] rect.brush');
    expect(overlay).not.toBeNull();
    expect(Number(overlay!.getAttribute("x"))).toBeCloseTo(10 + 0.2 * 200, 6);
    expect(Number(overlay!.getAttribute("width"))).toBeCloseTo(0.4 * 200, 6);
    expect(container.querySelectorAll("rect.brush")).toHaveLength(1);
  });

  it("invokes the clear handler for the right dimension", () => {
    const onClear = vi.fn();
    renderChartGrid(
      container,
      payloadWithCounts([1, 1, 1, 1, 1]),
      { resistance: { lo: 0, hi: 0.4 } },
      { ...noHandlers, onClear },
    );
    const btn = container.querySelector<HTMLElement>(
      '.chart[data-dim="resistance"] .chart-clear',
    );
    btn!.click();
    expect(onClear).toHaveBeenCalledWith("resistance");
  });
});

describe("renderChartError", () => {
  it("replaces the grid with a visible message", () => {
    renderChartGrid(container, payloadWithCounts([1, 1, 1, 1, 1]), {}, noHandlers);
    renderChartError(container, "distributions unavailable");
    expect(container.querySelectorAll(".chart")).toHaveLength(0);
    expect(container.querySelector(".charts-error")!.textContent).toBe(
      "distributions unavailable",
    );
  });
});
