/** End-to-end pass-through against a live service: real client, real
 * renderers, numbers straight from the API. Enabled by COVARC_API_BASE
 * (e.g. http://127.0.0.1:8008); skipped otherwise so plain `npm test`
 * stays hermetic. */

import { describe, expect, it } from "vitest";

import { Client, riskRequestBody } from "./api";
import { renderTimeline } from "./chart";
import { renderResults } from "./results";
import { DEFAULT_STATE, FormState } from "./state";

const BASE = process.env.COVARC_API_BASE ?? "";

describe.skipIf(!BASE)("live service pass-through", () => {
  const client = new Client(BASE);

  async function anyRegionState(): Promise<FormState> {
    const regions = await client.regions();
    expect(regions.length).toBeGreaterThan(0);
    return {
      ...DEFAULT_STATE,
      region: regions[0].canonical_id,
      date: process.env.COVARC_TEST_DATE ?? "2021-08-15",
      timeline_from: process.env.COVARC_TEST_FROM ?? "2021-06-01",
    };
  }

  it("renders interval bars numerically equal to the API body", async () => {
    const state = await anyRegionState();
    const report = await client.risk(riskRequestBody(state));
    const container = document.createElement("div");
    renderResults(container, report);
    for (const metric of ["infection", "hospitalization", "death"] as const) {
      const range = container.querySelector(
        `.risk-row[data-metric="${metric}"] .risk-range`,
      ) as HTMLElement;
      expect(range.dataset.lo).toBe(report[metric].lo);
      expect(range.dataset.hi).toBe(report[metric].hi);
    }
  });

  it("N95 lowers the infection range against the same live data", async () => {
    const state = await anyRegionState();
    const bare = await client.risk(riskRequestBody({ ...state, mask: "No Mask" }));
    const masked = await client.risk(riskRequestBody({ ...state, mask: "N95 respirator" }));
    expect(Number(masked.infection.hi)).toBeLessThan(Number(bare.infection.hi));
    expect(Number(masked.infection.lo)).toBeLessThanOrEqual(Number(bare.infection.lo));
  });

  it("draws gaps for days the service skipped", async () => {
    const state = await anyRegionState();
    const response = await client.simulate(state);
    expect(response.skipped.length).toBeGreaterThan(0);
    const container = document.createElement("div");
    renderTimeline(container, response);
    expect(container.querySelectorAll("polygon.band").length).toBeGreaterThan(0);
    expect(container.querySelector(".gap-note")!.textContent).toContain("without enough case history");
  });
});
