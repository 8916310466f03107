/** Form state and its round-trip through the URL query string, so any
 * assessment is shareable as a link. Numeric fields stay strings here;
 * validation decides what they mean. */

export interface FormState {
  region: string;
  date: string;
  timeline_from: string;
  age_years: string;
  sex: string;
  chronic_illness: boolean;
  vaccine: string;
  mask: string;
  n_indoor: string;
  n_outdoor: string;
  k_indoor: string;
  k_outdoor: string;
}

export const DEFAULT_STATE: FormState = {
  region: "",
  date: "",
  timeline_from: "",
  age_years: "30",
  sex: "male",
  chronic_illness: false,
  vaccine: "No Vaccine",
  mask: "No Mask",
  n_indoor: "5",
  n_outdoor: "10",
  k_indoor: "",
  k_outdoor: "",
};

const STRING_KEYS = [
  "region",
  "date",
  "timeline_from",
  "age_years",
  "sex",
  "vaccine",
  "mask",
  "n_indoor",
  "n_outdoor",
  "k_indoor",
  "k_outdoor",
] as const;

export function toQuery(state: FormState): string {
  const params = new URLSearchParams();
  for (const key of STRING_KEYS) {
    if (state[key] !== DEFAULT_STATE[key]) params.set(key, state[key]);
  }
  if (state.chronic_illness) params.set("chronic_illness", "true");
  return params.toString();
}

export function fromQuery(query: string): FormState {
  const params = new URLSearchParams(query);
  const state: FormState = { ...DEFAULT_STATE };
  for (const key of STRING_KEYS) {
    const value = params.get(key);
    if (value !== null) state[key] = value;
  }
  state.chronic_illness = params.get("chronic_illness") === "true";
  return state;
}

/** 90 days before the assessment date, for the default timeline window. */
export function defaultTimelineFrom(date: string): string {
  const parsed = new Date(`${date}T00:00:00Z`);
  if (Number.isNaN(parsed.getTime())) return "";
  parsed.setUTCDate(parsed.getUTCDate() - 90);
  return parsed.toISOString().slice(0, 10);
}
