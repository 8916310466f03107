import { describe, expect, it } from "vitest";

import { renderNotice, renderResults } from "./results";
import { RiskReportOut } from "./types";

const REPORT: RiskReportOut = {
  region: "arcadia/",
  date: "2021-08-15",
  infection: { lo: "0.0040930232558139534", hi: "0.0077767441860465129" },
  hospitalization: { lo: "0.00014513709572125448", hi: "0.00035566784937572914" },
  death: { lo: "5.3997429666322712e-06", hi: "2.4487260411697134e-05" },
  flags: ["no-survey-data", "unknown-efficacy"],
  config: { k_indoor: 1.0, k_outdoor: 0.05, variant_smoothing_sigma_days: 7.0, variant_lag_days: 30 },
  snapshot_time: "2022-05-01T12:00:00+00:00",
};

describe("results panel", () => {
  it("passes interval endpoints through verbatim", () => {
    const container = document.createElement("div");
    renderResults(container, REPORT);
    for (const metric of ["infection", "hospitalization", "death"] as const) {
      const range = container.querySelector(
        `.risk-row[data-metric="${metric}"] .risk-range`,
      ) as HTMLElement;
      expect(range.dataset.lo).toBe(REPORT[metric].lo);
      expect(range.dataset.hi).toBe(REPORT[metric].hi);
      // visible text is a formatting of the same value, not a recomputation
      expect(Number(range.dataset.lo)).toBeCloseTo(Number(REPORT[metric].lo), 15);
    }
  });

  it("draws one bar per metric", () => {
    const container = document.createElement("div");
    renderResults(container, REPORT);
    expect(container.querySelectorAll(".risk-band")).toHaveLength(3);
    const infection = container.querySelector(
      '.risk-row[data-metric="infection"] .risk-band',
    ) as HTMLElement;
    expect(infection.style.width).not.toBe("");
  });

  it("renders provenance flags in plain language", () => {
    const container = document.createElement("div");
    renderResults(container, REPORT);
    const caveats = [...container.querySelectorAll(".caveat")] as HTMLElement[];
    expect(caveats.map((c) => c.dataset.flag)).toEqual(["no-survey-data", "unknown-efficacy"]);
    expect(caveats[0].textContent).toMatch(/survey/i);
    expect(caveats[1].textContent).toMatch(/unpublished/i);
  });

  it("echoes the effective config", () => {
    const container = document.createElement("div");
    renderResults(container, REPORT);
    expect(container.querySelector(".result-meta")!.textContent).toContain("k_indoor 1");
  });

  it("renders notices", () => {
    const container = document.createElement("div");
    renderNotice(container, "no assessable days", "notice");
    expect(container.textContent).toContain("no assessable days");
  });
});
