/** Typed client for the risk service. Simulate keeps a single request in
 * flight: a newer call aborts the stale one. */

import { ApiError, RegionOut, RiskReportOut, SimulateResponse } from "./types";
import { FormState } from "./state";

async function errorFrom(response: Response): Promise<ApiError> {
  let code = "http-error";
  let message = `${response.status} ${response.statusText}`;
  let fields = [];
  try {
    const body = await response.json();
    // FastAPI wraps HTTPException payloads under "detail"
    const payload = body && typeof body === "object" && "detail" in body ? body.detail : body;
    if (payload && typeof payload === "object") {
      code = payload.code ?? code;
      message = payload.message ?? message;
      fields = payload.fields ?? [];
    }
  } catch {
    // non-JSON body: keep the status text
  }
  return new ApiError(response.status, code, message, fields);
}

export interface RiskRequestBody {
  region: string;
  date: string;
  profile: {
    age_years: number;
    sex: string;
    chronic_illness: boolean;
    vaccine: string;
    mask: string;
  };
  activity: { n_indoor: number; n_outdoor: number };
  config_overrides?: { k_indoor?: number; k_outdoor?: number };
}

export function riskRequestBody(state: FormState): RiskRequestBody {
  const body: RiskRequestBody = {
    region: state.region,
    date: state.date,
    profile: {
      age_years: Number(state.age_years),
      sex: state.sex,
      chronic_illness: state.chronic_illness,
      vaccine: state.vaccine,
      mask: state.mask,
    },
    activity: { n_indoor: Number(state.n_indoor), n_outdoor: Number(state.n_outdoor) },
  };
  if (state.k_indoor !== "" || state.k_outdoor !== "") {
    body.config_overrides = {};
    if (state.k_indoor !== "") body.config_overrides.k_indoor = Number(state.k_indoor);
    if (state.k_outdoor !== "") body.config_overrides.k_outdoor = Number(state.k_outdoor);
  }
  return body;
}

export class Client {
  private base: string;
  private simulateInFlight: AbortController | null = null;

  constructor(base = "") {
    this.base = base;
  }

  async regions(): Promise<RegionOut[]> {
    const response = await fetch(`${this.base}/api/v1/regions`);
    if (!response.ok) throw await errorFrom(response);
    return response.json();
  }

  async risk(body: RiskRequestBody): Promise<RiskReportOut> {
    const response = await fetch(`${this.base}/api/v1/risk`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await errorFrom(response);
    return response.json();
  }

  /** Aborts any earlier simulate call still in flight. */
  async simulate(state: FormState): Promise<SimulateResponse> {
    this.simulateInFlight?.abort();
    const controller = new AbortController();
    this.simulateInFlight = controller;

    const params = new URLSearchParams({
      region: state.region,
      from: state.timeline_from,
      to: state.date,
      age_years: String(state.age_years),
      sex: state.sex,
      chronic_illness: String(state.chronic_illness),
      vaccine: state.vaccine,
      mask: state.mask,
      n_indoor: String(state.n_indoor),
      n_outdoor: String(state.n_outdoor),
    });
    if (state.k_indoor !== "") params.set("k_indoor", state.k_indoor);
    if (state.k_outdoor !== "") params.set("k_outdoor", state.k_outdoor);

    const response = await fetch(`${this.base}/api/v1/simulate?${params}`, {
      signal: controller.signal,
    });
    if (!response.ok) throw await errorFrom(response);
    return response.json();
  }
}
