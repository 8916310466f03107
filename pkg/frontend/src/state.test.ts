import { describe, expect, it } from "vitest";

import { DEFAULT_STATE, defaultTimelineFrom, fromQuery, toQuery } from "./state";

describe("form state <-> URL query", () => {
  it("round-trips every field", () => {
    const state = {
      region: "arcadia/northport",
      date: "2021-08-15",
      timeline_from: "2021-06-01",
      age_years: "72",
      sex: "female",
      chronic_illness: true,
      vaccine: "Pfizer (Dose 2)",
      mask: "N95 respirator",
      n_indoor: "3",
      n_outdoor: "25",
      k_indoor: "1.5",
      k_outdoor: "0.1",
    };
    expect(fromQuery(toQuery(state))).toEqual(state);
  });

  it("omits defaults from the query string", () => {
    const state = { ...DEFAULT_STATE, region: "arcadia/", date: "2021-08-15" };
    const query = toQuery(state);
    expect(query).toContain("region=");
    expect(query).not.toContain("age_years");
    expect(query).not.toContain("chronic_illness");
    expect(fromQuery(query)).toEqual(state);
  });

  it("parses an empty query to the defaults", () => {
    expect(fromQuery("")).toEqual(DEFAULT_STATE);
  });

  it("derives a 90-day timeline start", () => {
    expect(defaultTimelineFrom("2021-08-15")).toBe("2021-05-17");
    expect(defaultTimelineFrom("not-a-date")).toBe("");
  });
});
