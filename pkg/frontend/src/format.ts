/** Display helpers. Numbers shown to the user are reformatted from the
 * API's decimal strings for readability; the verbatim strings ride along
 * in data attributes and tooltips. No risk math happens here. */

export function compact(apiValue: string): string {
  const parsed = Number(apiValue);
  if (!Number.isFinite(parsed)) return apiValue;
  if (parsed === 0) return "0";
  const text = parsed.toPrecision(3);
  // tidy "1.50e-4" style output without changing the value's reading
  return String(Number(text));
}

export const FLAG_TEXT: Record<string, string> = {
  "no-survey-data":
    "No survey data for this region/date: the upper bound equals the official-count lower bound.",
  "lag-fallback":
    "No variant data at the lagged sampling date: the original strain is assumed.",
  "unknown-efficacy":
    "Some vaccine-variant efficacies are unpublished and counted as zero protection.",
  "unknown-severity":
    "Some variant severity factors are unpublished and counted as neutral.",
};

export function flagText(flag: string): string {
  return FLAG_TEXT[flag] ?? flag;
}
