/** Form construction and wiring. All numbers shown anywhere come from API
 * responses; this module only moves strings between DOM, URL, and client. */

import { Client, riskRequestBody } from "./api";
import { renderTimeline, YMax } from "./chart";
import { renderNotice, renderResults } from "./results";
import { FormState, defaultTimelineFrom, fromQuery, toQuery } from "./state";
import { MASKS, SEXES, VACCINES } from "./tables";
import { ApiError } from "./types";
import { isValid, validateForm } from "./validate";

interface FieldSpec {
  key: keyof FormState;
  label: string;
  build: (id: string) => HTMLElement;
  advanced?: boolean;
}

function textInput(id: string, type = "text", placeholder = ""): HTMLInputElement {
  const input = document.createElement("input");
  input.id = id;
  input.name = id;
  input.type = type;
  if (placeholder) input.placeholder = placeholder;
  return input;
}

function select(id: string, options: string[]): HTMLSelectElement {
  const el = document.createElement("select");
  el.id = id;
  el.name = id;
  for (const value of options) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    el.appendChild(option);
  }
  return el;
}

const FIELDS: FieldSpec[] = [
  {
    key: "region",
    label: "Region",
    build: (id) => {
      const input = textInput(id, "text", "start typing to search");
      input.setAttribute("list", "region-options");
      return input;
    },
  },
  { key: "date", label: "Date", build: (id) => textInput(id, "date") },
  { key: "age_years", label: "Age (years)", build: (id) => textInput(id, "number") },
  { key: "sex", label: "Sex", build: (id) => select(id, SEXES) },
  {
    key: "chronic_illness",
    label: "Any chronic illness",
    build: (id) => textInput(id, "checkbox"),
  },
  { key: "vaccine", label: "Vaccination", build: (id) => select(id, VACCINES) },
  { key: "mask", label: "Mask", build: (id) => select(id, MASKS) },
  { key: "n_indoor", label: "People nearby indoors", build: (id) => textInput(id, "number") },
  { key: "n_outdoor", label: "People passed outdoors", build: (id) => textInput(id, "number") },
  { key: "timeline_from", label: "Timeline start", build: (id) => textInput(id, "date"), advanced: true },
  { key: "k_indoor", label: "Indoor multiplier (k_indoor)", build: (id) => textInput(id, "text", "default 1.0"), advanced: true },
  { key: "k_outdoor", label: "Outdoor multiplier (k_outdoor)", build: (id) => textInput(id, "text", "default 0.05"), advanced: true },
];

export function buildDom(root: HTMLElement): void {
  root.replaceChildren();
  const form = document.createElement("form");
  form.id = "risk-form";
  form.noValidate = true;

  const datalist = document.createElement("datalist");
  datalist.id = "region-options";
  form.appendChild(datalist);

  const advanced = document.createElement("details");
  advanced.id = "advanced";
  const summary = document.createElement("summary");
  summary.textContent = "Advanced";
  advanced.appendChild(summary);

  for (const field of FIELDS) {
    const wrap = document.createElement("label");
    wrap.className = "field";
    wrap.dataset.field = field.key;
    const caption = document.createElement("span");
    caption.textContent = field.label;
    const control = field.build(field.key);
    const error = document.createElement("small");
    error.className = "field-error";
    error.id = `${field.key}-error`;
    wrap.append(caption, control, error);
    (field.advanced ? advanced : form).appendChild(wrap);
  }
  form.appendChild(advanced);

  const submit = document.createElement("button");
  submit.type = "submit";
  submit.id = "submit";
  submit.textContent = "Estimate risk";
  submit.disabled = true;
  form.appendChild(submit);

  const results = document.createElement("section");
  results.id = "results";
  const chart = document.createElement("section");
  chart.id = "chart";

  root.append(form, results, chart);
}

export function readFormState(root: HTMLElement): FormState {
  const value = (id: string) => (root.querySelector(`#${id}`) as HTMLInputElement).value;
  return {
    region: value("region"),
    date: value("date"),
    timeline_from: value("timeline_from"),
    age_years: value("age_years"),
    sex: value("sex"),
    chronic_illness: (root.querySelector("#chronic_illness") as HTMLInputElement).checked,
    vaccine: value("vaccine"),
    mask: value("mask"),
    n_indoor: value("n_indoor"),
    n_outdoor: value("n_outdoor"),
    k_indoor: value("k_indoor"),
    k_outdoor: value("k_outdoor"),
  };
}

export function applyFormState(root: HTMLElement, state: FormState): void {
  for (const [key, value] of Object.entries(state)) {
    const el = root.querySelector(`#${key}`) as HTMLInputElement | null;
    if (!el) continue;
    if (key === "chronic_illness") el.checked = value as boolean;
    else el.value = String(value);
  }
}

function showFieldErrors(root: HTMLElement, errors: Record<string, string>): void {
  for (const field of FIELDS) {
    const slot = root.querySelector(`#${field.key}-error`) as HTMLElement;
    slot.textContent = errors[field.key] ?? "";
  }
}

/** "profile.age_years" and "activity.n_indoor" map onto flat input names. */
export function fieldFromServerPath(path: string): string {
  const leaf = path.split(".").pop() ?? path;
  return leaf === "from" ? "timeline_from" : leaf === "to" ? "date" : leaf;
}

export interface App {
  refresh: () => Promise<void>;
}

export function renderApp(root: HTMLElement, client: Client): App {
  buildDom(root);
  const form = root.querySelector("#risk-form") as HTMLFormElement;
  const submit = root.querySelector("#submit") as HTMLButtonElement;
  const results = root.querySelector("#results") as HTMLElement;
  const chart = root.querySelector("#chart") as HTMLElement;

  let regionIds: string[] = [];
  let submittedOnce = false;
  const yMaxByWindow = new Map<string, YMax>();

  applyFormState(root, fromQuery(window.location.search));

  client
    .regions()
    .then((regions) => {
      regionIds = regions.map((r) => r.canonical_id);
      const datalist = root.querySelector("#region-options") as HTMLElement;
      datalist.replaceChildren(
        ...regions.map((r) => {
          const option = document.createElement("option");
          option.value = r.canonical_id;
          option.textContent = r.region ? `${r.country} / ${r.region}` : r.country;
          return option;
        }),
      );
      revalidate();
    })
    .catch(() => {
      renderNotice(results, "cannot reach the risk service", "error");
    });

  function revalidate(): FormState {
    const state = readFormState(root);
    const errors = validateForm(state, regionIds);
    showFieldErrors(root, errors as Record<string, string>);
    submit.disabled = !isValid(errors);
    const query = toQuery(state);
    window.history.replaceState(null, "", query ? `?${query}` : window.location.pathname);
    return state;
  }

  async function runAssessment(): Promise<void> {
    const state = revalidate();
    if (submit.disabled) return;
    if (state.timeline_from === "") {
      state.timeline_from = defaultTimelineFrom(state.date);
    }
    try {
      const report = await client.risk(riskRequestBody(state));
      renderResults(results, report);
      submittedOnce = true;
    } catch (error) {
      handleError(error);
      return;
    }
    try {
      const response = await client.simulate(state);
      const windowKey = `${state.region}|${state.timeline_from}|${state.date}`;
      const used = renderTimeline(chart, response, yMaxByWindow.get(windowKey));
      yMaxByWindow.set(windowKey, used);
    } catch (error) {
      if ((error as Error).name === "AbortError") return;
      if (error instanceof ApiError) renderNotice(chart, error.message, "error");
    }
  }

  function handleError(error: unknown): void {
    if (error instanceof ApiError) {
      if (error.fields.length > 0) {
        const mapped: Record<string, string> = {};
        for (const field of error.fields) {
          mapped[fieldFromServerPath(field.field)] = field.message;
        }
        showFieldErrors(root, mapped);
        return;
      }
      if (error.code === "region-not-found") {
        showFieldErrors(root, { region: error.message });
        return;
      }
      if (error.code === "insufficient-data") {
        renderNotice(results, `Not enough case history: ${error.message}`, "notice");
        return;
      }
      renderNotice(results, error.message, "error");
      return;
    }
    renderNotice(results, "request failed", "error");
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void runAssessment();
  });
  form.addEventListener("input", () => {
    revalidate();
  });
  form.addEventListener("change", () => {
    revalidate();
    // adjust-and-compare: once a result is shown, changes re-fetch immediately
    if (submittedOnce && !submit.disabled) void runAssessment();
  });

  return { refresh: runAssessment };
}
