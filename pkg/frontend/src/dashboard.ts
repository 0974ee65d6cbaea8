/**
 * The indicators view: state histogram, per-reasoning-activity coverage
 * bars, and lint finding counts. Every number shown comes verbatim from the
 * report endpoints; the only client-side work is text formatting and bar
 * widths.
 */

import { ApiClient, CoverageReport, LintReport, StatesReport } from "./api.js";
import { STATES, StateName, stateBadge } from "./kinds.js";

export interface DashboardData {
  states: StatesReport;
  coverage: CoverageReport;
  lint: LintReport;
}

export async function fetchDashboard(api: ApiClient): Promise<DashboardData> {
  const [states, coverage, lint] = await Promise.all([
    api.statesReport(),
    api.coverageReport(),
    api.lintReport(),
  ]);
  return { states, coverage, lint };
}

export interface StateRow {
  state: StateName;
  label: string;
  count: number;
  /** share of the total, for the bar width; 0 on an empty KB */
  barPercent: number;
}

export interface CoverageRow {
  activityId: string;
  implemented: number;
  denominator: number;
  dismissed: number;
  percentText: string;
  barPercent: number;
}

export interface DashboardViewModel {
  totalObjects: number;
  stateRows: StateRow[];
  coverageRows: CoverageRow[];
  projectPercentText: string;
  errorCount: number;
  warningCount: number;
}

export function formatPercent(percent: number): string {
  return `${percent.toFixed(1)}%`;
}

export function dashboardViewModel(data: DashboardData): DashboardViewModel {
  const total = data.states.total;
  const stateRows = STATES.map((state) => {
    const count = data.states.histogram[state] ?? 0;
    return {
      state,
      label: stateBadge(state),
      count,
      barPercent: total === 0 ? 0 : (count / total) * 100,
    };
  });
  const coverageRows = data.coverage.per_activity.map((row) => ({
    activityId: row.activity_id,
    implemented: row.implemented,
    denominator: row.covered_total - row.dismissed,
    dismissed: row.dismissed,
    percentText: formatPercent(row.ratio.percent),
    barPercent: row.ratio.percent,
  }));
  return {
    totalObjects: total,
    stateRows,
    coverageRows,
    projectPercentText: formatPercent(data.coverage.project_ratio.percent),
    errorCount: data.lint.counts.Error,
    warningCount: data.lint.counts.Warning,
  };
}

/** Repeatedly refresh the dashboard; returns a stop function. */
export function startPolling(
  api: ApiClient,
  onData: (model: DashboardViewModel) => void,
  onError: (error: unknown) => void,
  intervalMs = 3000,
): () => void {
  let stopped = false;
  let timer: ReturnType<typeof setTimeout> | undefined;

  const tick = async () => {
    try {
      const data = await fetchDashboard(api);
      if (!stopped) onData(dashboardViewModel(data));
    } catch (error) {
      if (!stopped) onError(error);
    }
    if (!stopped) timer = setTimeout(tick, intervalMs);
  };
  void tick();
  return () => {
    stopped = true;
    if (timer !== undefined) clearTimeout(timer);
  };
}
