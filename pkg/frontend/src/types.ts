/** Shapes of /api/v1 bodies. Interval endpoints arrive as decimal strings
 * carrying full float precision; the UI never recomputes them. */

export interface IntervalOut {
  lo: string;
  hi: string;
}

export interface RegionOut {
  canonical_id: string;
  country: string;
  region: string | null;
  population: number;
  has_variants: boolean;
  has_ratios: boolean;
}

export interface ConfigOut {
  k_indoor: number;
  k_outdoor: number;
  variant_smoothing_sigma_days: number;
  variant_lag_days: number;
}

export interface RiskReportOut {
  region: string;
  date: string;
  infection: IntervalOut;
  hospitalization: IntervalOut;
  death: IntervalOut;
  flags: string[];
  config: ConfigOut;
  snapshot_time: string;
}

export interface SimulateRow {
  date: string;
  infection: IntervalOut;
  hospitalization: IntervalOut;
  death: IntervalOut;
  flags: string[];
}

export interface SkippedDay {
  date: string;
  code: string;
  message: string;
}

export interface SimulateResponse {
  region: string;
  snapshot_time: string;
  config: ConfigOut;
  rows: SimulateRow[];
  skipped: SkippedDay[];
}

export interface FieldError {
  field: string;
  message: string;
}

export class ApiError extends Error {
  status: number;
  code: string;
  fields: FieldError[];

  constructor(status: number, code: string, message: string, fields: FieldError[] = []) {
    super(message);
    this.status = status;
    this.code = code;
    this.fields = fields;
  }
}

export const METRICS = ["infection", "hospitalization", "death"] as const;
export type Metric = (typeof METRICS)[number];
