import { describe, expect, it } from "vitest";

import { DEFAULT_STATE, FormState } from "./state";
import { isValid, validateForm } from "./validate";

const VALID: FormState = {
  ...DEFAULT_STATE,
  region: "arcadia/",
  date: "2021-08-15",
};

describe("client-side validation mirrors server rules", () => {
  it("accepts a complete, sane form", () => {
    expect(validateForm(VALID)).toEqual({});
    expect(isValid(validateForm(VALID))).toBe(true);
  });

  it("requires a region, optionally from the known list", () => {
    expect(validateForm({ ...VALID, region: "" }).region).toBeTruthy();
    expect(validateForm({ ...VALID, region: "atlantis/" }, ["arcadia/"]).region).toBeTruthy();
    expect(validateForm(VALID, ["arcadia/"]).region).toBeUndefined();
  });

  it("rejects the same values the server rejects", () => {
    expect(validateForm({ ...VALID, age_years: "-1" }).age_years).toBeTruthy();
    expect(validateForm({ ...VALID, age_years: "2.5" }).age_years).toBeTruthy();
    expect(validateForm({ ...VALID, date: "15/08/2021" }).date).toBeTruthy();
    expect(validateForm({ ...VALID, mask: "N96" }).mask).toBeTruthy();
    expect(validateForm({ ...VALID, vaccine: "Sputnik" }).vaccine).toBeTruthy();
    expect(validateForm({ ...VALID, n_indoor: "-2" }).n_indoor).toBeTruthy();
    expect(validateForm({ ...VALID, n_outdoor: "abc" }).n_outdoor).toBeTruthy();
  });

  it("checks the advanced multipliers like the server", () => {
    expect(validateForm({ ...VALID, k_indoor: "0" }).k_indoor).toBeTruthy();
    expect(validateForm({ ...VALID, k_outdoor: "-1" }).k_outdoor).toBeTruthy();
    expect(validateForm({ ...VALID, k_indoor: "0.5", k_outdoor: "0.9" }).k_outdoor).toBeTruthy();
    expect(validateForm({ ...VALID, k_indoor: "2", k_outdoor: "0.5" })).toEqual({});
  });

  it("keeps the timeline start before the assessment date", () => {
    expect(validateForm({ ...VALID, timeline_from: "2021-09-01" }).timeline_from).toBeTruthy();
    expect(validateForm({ ...VALID, timeline_from: "2021-06-01" })).toEqual({});
  });
});
