/** Client-side validation mirroring the server's rules, for instant
 * feedback only; the server remains the source of truth. */

import { FormState } from "./state";
import { MASKS, SEXES, VACCINES } from "./tables";

export type FieldErrors = Partial<Record<keyof FormState, string>>;

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

function isIsoDate(value: string): boolean {
  if (!ISO_DATE.test(value)) return false;
  return !Number.isNaN(new Date(`${value}T00:00:00Z`).getTime());
}

function nonNegativeInt(value: string): boolean {
  return /^\d+$/.test(value);
}

function positiveNumber(value: string): boolean {
  const parsed = Number(value);
  return Number.isFinite(parsed) && parsed > 0;
}

export function validateForm(state: FormState, regionIds?: string[]): FieldErrors {
  const errors: FieldErrors = {};
  if (!state.region) {
    errors.region = "pick a region";
  } else if (regionIds && regionIds.length > 0 && !regionIds.includes(state.region)) {
    errors.region = "not a known region";
  }
  if (!isIsoDate(state.date)) errors.date = "date must be YYYY-MM-DD";
  if (state.timeline_from && !isIsoDate(state.timeline_from)) {
    errors.timeline_from = "date must be YYYY-MM-DD";
  } else if (
    state.timeline_from &&
    isIsoDate(state.date) &&
    state.timeline_from > state.date
  ) {
    errors.timeline_from = "must not be after the assessment date";
  }
  if (!nonNegativeInt(state.age_years)) errors.age_years = "age must be an integer >= 0";
  if (!SEXES.includes(state.sex)) errors.sex = "pick male or female";
  if (!VACCINES.includes(state.vaccine)) errors.vaccine = "pick a vaccination from the list";
  if (!MASKS.includes(state.mask)) errors.mask = "pick a mask from the list";
  if (!nonNegativeInt(state.n_indoor)) errors.n_indoor = "must be an integer >= 0";
  if (!nonNegativeInt(state.n_outdoor)) errors.n_outdoor = "must be an integer >= 0";
  if (state.k_indoor !== "" && !positiveNumber(state.k_indoor)) {
    errors.k_indoor = "must be a number > 0";
  }
  if (state.k_outdoor !== "" && !positiveNumber(state.k_outdoor)) {
    errors.k_outdoor = "must be a number > 0";
  }
  if (
    state.k_indoor !== "" &&
    state.k_outdoor !== "" &&
    positiveNumber(state.k_indoor) &&
    positiveNumber(state.k_outdoor) &&
    Number(state.k_outdoor) > Number(state.k_indoor)
  ) {
    errors.k_outdoor = "outdoor multiplier must not exceed indoor";
  }
  return errors;
}

export function isValid(errors: FieldErrors): boolean {
  return Object.keys(errors).length === 0;
}
