import { ApiClient } from "./api.js";
import type { MetricsPayload, Report } from "./types.js";

export interface DashboardState {
  loading: boolean;
  error: string | null;
  /** true when the log holds no completed sessions yet */
  empty: boolean;
  report: Report | null;
}

type Listener = (state: DashboardState) => void;

/** Fetches the served report and exposes it for rendering. Every number on
 * the dashboard comes from the service; this class only formats. */
export class DashboardModel {
  private state: DashboardState = { loading: false, error: null, empty: true, report: null };
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): DashboardState {
    return this.state;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private update(patch: Partial<DashboardState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  async refresh(): Promise<void> {
    this.update({ loading: true });
    try {
      const payload: MetricsPayload = await this.api.getMetrics();
      this.update({
        loading: false,
        error: null,
        empty: payload.total_tasks === 0 || payload.report === null,
        report: payload.report,
      });
    } catch (error) {
      this.update({
        loading: false,
        error: error instanceof Error ? error.message : String(error),
      });
    }
  }

  /** "22.5%" for a served overall_success_rate of 0.225. */
  get overallBanner(): string | null {
    if (this.state.report === null) return null;
    const percent = this.state.report.overall_success_rate * 100;
    const text = Number.isInteger(percent) ? percent.toFixed(0) : percent.toFixed(1);
    return `${text}%`;
  }

  /** Rows sorted by descending success rate, then id. */
  get perTextileRows() {
    const report = this.state.report;
    if (report === null) return [];
    return [...report.per_textile].sort((a, b) => {
      const ra = a.success_rate ?? -1;
      const rb = b.success_rate ?? -1;
      return rb - ra || a.id - b.id;
    });
  }

  /** Histogram bars for ratings 1..10 with served counts. */
  histogramBars(kind: "validity" | "similarity"): { rating: number; count: number }[] {
    const stats = this.state.report?.[kind];
    if (!stats) return [];
    return Array.from({ length: 10 }, (_, i) => ({
      rating: i + 1,
      count: stats.histogram[String(i + 1)] ?? 0,
    }));
  }

  /** Confusion heatmap cells with a 0..1 presentation intensity. */
  get heatmapCells(): { actual: number; predicted: number; count: number; intensity: number }[] {
    const report = this.state.report;
    if (report === null) return [];
    let max = 0;
    for (const row of report.confusion) for (const cell of row) max = Math.max(max, cell);
    const cells = [];
    for (let i = 0; i < report.confusion_ids.length; i += 1) {
      for (let j = 0; j < report.confusion_ids.length; j += 1) {
        const count = report.confusion[i][j];
        cells.push({
          actual: report.confusion_ids[i],
          predicted: report.confusion_ids[j],
          count,
          intensity: max === 0 ? 0 : count / max,
        });
      }
    }
    return cells;
  }
}
