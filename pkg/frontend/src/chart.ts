/** Timeline chart: one shaded lo-hi band per risk metric, drawn as SVG
 * small multiples. Days the server skipped stay blank, splitting bands
 * into separate segments rather than dipping to zero. */

import { compact } from "./format";
import { METRICS, Metric, SimulateResponse, SimulateRow } from "./types";

const WIDTH = 680;
const PANEL_HEIGHT = 96;
const PANEL_GAP = 26;
const MARGIN_LEFT = 8;
const MARGIN_RIGHT = 8;

const BAND_COLORS: Record<Metric, string> = {
  infection: "#4a7fb5",
  hospitalization: "#b58a4a",
  death: "#a14a4a",
};

export type YMax = Record<Metric, number>;

function dayIndex(date: string): number {
  return Math.round(Date.parse(`${date}T00:00:00Z`) / 86_400_000);
}

/** Split rows into runs of consecutive dates; a missing day breaks the run. */
export function segmentRows(rows: SimulateRow[]): SimulateRow[][] {
  const segments: SimulateRow[][] = [];
  let current: SimulateRow[] = [];
  let previous: number | null = null;
  for (const row of rows) {
    const index = dayIndex(row.date);
    if (previous !== null && index !== previous + 1) {
      segments.push(current);
      current = [];
    }
    current.push(row);
    previous = index;
  }
  if (current.length > 0) segments.push(current);
  return segments;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS("http://www.w3.org/2000/svg", name);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

/** Renders the chart and returns the y-scale maxima actually used.
 * ``sticky`` carries maxima from a previous render of the same window, so
 * switching to a stronger mask visibly lowers the band instead of
 * rescaling the axis. */
export function renderTimeline(
  container: HTMLElement,
  response: SimulateResponse,
  sticky?: YMax,
): YMax {
  container.replaceChildren();
  const rows = response.rows;
  const used: YMax = { infection: 0, hospitalization: 0, death: 0 };
  if (rows.length === 0) {
    const notice = document.createElement("p");
    notice.className = "notice";
    notice.textContent = "no assessable days in this range";
    container.appendChild(notice);
    return sticky ?? used;
  }

  const allDates = [...rows.map((r) => r.date), ...response.skipped.map((s) => s.date)];
  const indices = allDates.map(dayIndex);
  const xMin = Math.min(...indices);
  const xMax = Math.max(...indices);
  const span = Math.max(xMax - xMin, 1);
  const x = (date: string) =>
    MARGIN_LEFT + ((dayIndex(date) - xMin) / span) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);

  const height = METRICS.length * (PANEL_HEIGHT + PANEL_GAP);
  const svg = svgElement("svg", {
    viewBox: `0 0 ${WIDTH} ${height}`,
    width: "100%",
    role: "img",
  });

  const segments = segmentRows(rows);
  METRICS.forEach((metric, panel) => {
    const top = panel * (PANEL_HEIGHT + PANEL_GAP) + PANEL_GAP;
    const bottom = top + PANEL_HEIGHT;
    const dataMax = Math.max(...rows.map((r) => Number(r[metric].hi)));
    const yMax = Math.max(dataMax, sticky?.[metric] ?? 0) || 1;
    used[metric] = yMax;
    const y = (value: number) => bottom - (value / yMax) * PANEL_HEIGHT;

    const title = svgElement("text", {
      x: String(MARGIN_LEFT),
      y: String(top - 8),
      class: "panel-title",
    });
    title.textContent = `${metric} (axis max ${compact(String(yMax))})`;
    svg.appendChild(title);
    svg.appendChild(
      svgElement("line", {
        x1: String(MARGIN_LEFT),
        y1: String(bottom),
        x2: String(WIDTH - MARGIN_RIGHT),
        y2: String(bottom),
        class: "axis",
      }),
    );

    for (const segment of segments) {
      const upper = segment.map((r) => `${x(r.date).toFixed(2)},${y(Number(r[metric].hi)).toFixed(2)}`);
      const lower = [...segment]
        .reverse()
        .map((r) => `${x(r.date).toFixed(2)},${y(Number(r[metric].lo)).toFixed(2)}`);
      const band = svgElement("polygon", {
        points: [...upper, ...lower].join(" "),
        fill: BAND_COLORS[metric],
        "fill-opacity": "0.55",
        stroke: BAND_COLORS[metric],
        "stroke-width": "1",
        class: "band",
        "data-metric": metric,
        "data-days": String(segment.length),
      });
      svg.appendChild(band);
    }
  });

  const firstDate = rows[0].date;
  const lastDate = rows[rows.length - 1].date;
  const xLabel = svgElement("text", {
    x: String(MARGIN_LEFT),
    y: String(height - 4),
    class: "axis-label",
  });
  xLabel.textContent = `${firstDate} → ${lastDate}`;
  svg.appendChild(xLabel);

  container.appendChild(svg);
  if (response.skipped.length > 0) {
    const note = document.createElement("p");
    note.className = "gap-note";
    note.textContent = `${response.skipped.length} day(s) without enough case history are shown as gaps`;
    container.appendChild(note);
  }
  return used;
}
