import { describe, expect, it } from "vitest";

import { DashboardModel } from "../src/dashboardModel.js";
import type { Report } from "../src/types.js";
import { FakeApi } from "./fakeApi.js";

function sampleReport(): Report {
  return {
    total_tasks: 80,
    wins: 18,
    total_attempts: 362,
    overall_success_rate: 0.225,
    per_textile: [
      { id: 1, name: "A", targeted: 4, success_rate: 0.0, mean_validity: 2.5, mean_similarity: 2.0 },
      { id: 2, name: "B", targeted: 4, success_rate: 1.0, mean_validity: 8.0, mean_similarity: 7.5 },
      { id: 3, name: "C", targeted: 4, success_rate: 0.5, mean_validity: null, mean_similarity: null },
    ],
    attempts: { avg_all: 4.525, std_all: 1.1, avg_successful: 2.9, std_successful: 1.0 },
    validity: {
      mean: 5.25,
      std: 1.7,
      histogram: { "1": 10, "2": 0, "3": 4, "4": 6, "5": 8, "6": 7, "7": 5, "8": 12, "9": 2, "10": 1 },
      count: 55,
    },
    similarity: {
      mean: 4.77,
      std: 1.6,
      histogram: { "1": 12, "2": 1, "3": 5, "4": 7, "5": 9, "6": 6, "7": 4, "8": 9, "9": 1, "10": 1 },
      count: 55,
    },
    confusion_ids: [1, 2, 3],
    confusion: [
      [0, 3, 1],
      [1, 4, 0],
      [0, 0, 2],
    ],
    metadata: {},
  };
}

describe("dashboard model", () => {
  it("reports the empty state when no sessions exist", async () => {
    const api = new FakeApi();
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    expect(model.getState().empty).toBe(true);
    expect(model.overallBanner).toBeNull();
  });

  it("formats the served success rate as 22.5%", async () => {
    const api = new FakeApi();
    api.metrics = { total_tasks: 80, report: sampleReport() };
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    expect(model.getState().empty).toBe(false);
    expect(model.overallBanner).toBe("22.5%");
  });

  it("formats whole percentages without a decimal", async () => {
    const api = new FakeApi();
    const report = sampleReport();
    report.overall_success_rate = 0.5;
    api.metrics = { total_tasks: 4, report };
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    expect(model.overallBanner).toBe("50%");
  });

  it("sorts per-textile rows by success rate, then id", async () => {
    const api = new FakeApi();
    api.metrics = { total_tasks: 80, report: sampleReport() };
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    expect(model.perTextileRows.map((r) => r.id)).toEqual([2, 3, 1]);
  });

  it("produces ten histogram bars from the served counts", async () => {
    const api = new FakeApi();
    api.metrics = { total_tasks: 80, report: sampleReport() };
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    const bars = model.histogramBars("validity");
    expect(bars).toHaveLength(10);
    expect(bars[0]).toEqual({ rating: 1, count: 10 });
    expect(bars[7]).toEqual({ rating: 8, count: 12 });
    expect(bars.reduce((total, bar) => total + bar.count, 0)).toBe(55);
  });

  it("builds heatmap cells with served counts and scaled intensity", async () => {
    const api = new FakeApi();
    api.metrics = { total_tasks: 80, report: sampleReport() };
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    const cells = model.heatmapCells;
    expect(cells).toHaveLength(9);
    const diagonal = cells.find((c) => c.actual === 2 && c.predicted === 2);
    expect(diagonal?.count).toBe(4);
    expect(diagonal?.intensity).toBe(1);
    expect(cells.reduce((total, cell) => total + cell.count, 0)).toBe(11);
  });

  it("surfaces fetch failures as an error", async () => {
    const api = new FakeApi();
    api.unreachable = true;
    const model = new DashboardModel(api.asClient());
    await model.refresh();
    expect(model.getState().error).toContain("unreachable");
  });
});
