import { describe, expect, it } from "vitest";

import type { CoverageReport, LintReport, StatesReport } from "../src/api.js";
import { dashboardViewModel, formatPercent } from "../src/dashboard.js";

const states: StatesReport = {
  total: 5,
  histogram: { NotTreated: 1, InProgress: 1, Implemented: 2, Dismissed: 1 },
  by_kind: {},
};

const coverage: CoverageReport = {
  per_activity: [
    {
      activity_id: "o-00000001",
      covered_total: 4,
      implemented: 2,
      dismissed: 1,
      ratio: { numerator: 2, denominator: 3, percent: 66.7 },
    },
  ],
  project_ratio: { numerator: 2, denominator: 3, percent: 66.7 },
  state_histogram: { NotTreated: 1, InProgress: 1, Implemented: 2, Dismissed: 1 },
};

const lint: LintReport = {
  findings: [
    { rule_id: "C2", severity: "Error", subject_id: "o-00000001", message: "covers nothing" },
  ],
  counts: { Error: 1, Warning: 0 },
};

describe("dashboard view model", () => {
  it("passes every endpoint number through verbatim", () => {
    const model = dashboardViewModel({ states, coverage, lint });
    expect(model.totalObjects).toBe(states.total);
    for (const row of model.stateRows) {
      expect(row.count).toBe(states.histogram[row.state]);
    }
    const coverageRow = model.coverageRows[0]!;
    expect(coverageRow.implemented).toBe(2);
    expect(coverageRow.denominator).toBe(3);
    expect(coverageRow.percentText).toBe("66.7%");
    expect(model.projectPercentText).toBe("66.7%");
    expect(model.errorCount).toBe(1);
    expect(model.warningCount).toBe(0);
  });

  it("renders an empty KB without dividing by zero", () => {
    const model = dashboardViewModel({
      states: { total: 0, histogram: { NotTreated: 0, InProgress: 0, Implemented: 0, Dismissed: 0 }, by_kind: {} },
      coverage: {
        per_activity: [],
        project_ratio: { numerator: 1, denominator: 1, percent: 100.0 },
        state_histogram: { NotTreated: 0, InProgress: 0, Implemented: 0, Dismissed: 0 },
      },
      lint: { findings: [], counts: { Error: 0, Warning: 0 } },
    });
    expect(model.coverageRows).toEqual([]);
    expect(model.stateRows.every((row) => row.barPercent === 0)).toBe(true);
  });

  it("labels states in badge style", () => {
    const model = dashboardViewModel({ states, coverage, lint });
    expect(model.stateRows[0]!.label).toBe("not treated");
    expect(model.stateRows[1]!.label).toBe("in progress");
  });

  it("formats percentages to one decimal", () => {
    expect(formatPercent(66.7)).toBe("66.7%");
    expect(formatPercent(100)).toBe("100.0%");
    expect(formatPercent(0)).toBe("0.0%");
  });
});
