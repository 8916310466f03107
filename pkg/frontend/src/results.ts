/** Results panel: three interval bars plus plain-language caveats.
 * Endpoint text and data attributes carry the API's values through
 * untouched; bar geometry is the only derived quantity. */

import { compact, flagText } from "./format";
import { METRICS, Metric, RiskReportOut } from "./types";

const LABELS: Record<Metric, string> = {
  infection: "Infection",
  hospitalization: "Hospitalization",
  death: "Death",
};

export function renderResults(container: HTMLElement, report: RiskReportOut): void {
  container.replaceChildren();
  const maxHi = Math.max(...METRICS.map((m) => Number(report[m].hi)), Number.MIN_VALUE);

  for (const metric of METRICS) {
    const interval = report[metric];
    const row = document.createElement("div");
    row.className = "risk-row";
    row.dataset.metric = metric;

    const label = document.createElement("span");
    label.className = "risk-label";
    label.textContent = LABELS[metric];

    const track = document.createElement("div");
    track.className = "risk-track";
    const band = document.createElement("div");
    band.className = "risk-band";
    const lo = Number(interval.lo);
    const hi = Number(interval.hi);
    const left = maxHi > 0 ? (lo / maxHi) * 100 : 0;
    const width = maxHi > 0 ? ((hi - lo) / maxHi) * 100 : 0;
    band.style.left = `${left.toFixed(3)}%`;
    band.style.width = `${Math.max(width, 0.5).toFixed(3)}%`;
    track.appendChild(band);

    const range = document.createElement("span");
    range.className = "risk-range";
    range.dataset.lo = interval.lo;
    range.dataset.hi = interval.hi;
    range.title = `[${interval.lo}, ${interval.hi}]`;
    range.textContent = `${compact(interval.lo)} – ${compact(interval.hi)}`;

    row.append(label, track, range);
    container.appendChild(row);
  }

  if (report.flags.length > 0) {
    const list = document.createElement("ul");
    list.className = "caveats";
    for (const flag of report.flags) {
      const item = document.createElement("li");
      item.className = "caveat";
      item.dataset.flag = flag;
      item.textContent = flagText(flag);
      list.appendChild(item);
    }
    container.appendChild(list);
  }

  const meta = document.createElement("p");
  meta.className = "result-meta";
  meta.textContent =
    `${report.region} on ${report.date} · ` +
    `k_indoor ${report.config.k_indoor}, k_outdoor ${report.config.k_outdoor} · ` +
    `snapshot ${report.snapshot_time}`;
  container.appendChild(meta);
}

export function renderNotice(container: HTMLElement, message: string, kind = "notice"): void {
  container.replaceChildren();
  const notice = document.createElement("p");
  notice.className = kind;
  notice.textContent = message;
  container.appendChild(notice);
}
