"""Command-line entry point: snapshot checks, one-shot risk, sweeps, serving.

The CLI is a thin client of the library: every number it prints comes
straight out of the same assess/simulate calls the HTTP service uses.

Exit codes: 0 success, 1 fatal error, 2 warnings under --check-only.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import CovarcError
from .ingest import DataSnapshot, load_snapshot
from .riskmodel import ActivityProfile, PersonProfile, RiskConfig, RiskReport, assess, simulate

SWEEP_CSV_COLUMNS = [
    "scenario",
    "date",
    "infection_lo",
    "infection_hi",
    "hosp_lo",
    "hosp_hi",
    "death_lo",
    "death_hi",
    "flags",
]


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _parse_date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def _report_row(report: RiskReport, scenario: str | None = None) -> list[str]:
    cells = [
        report.date.isoformat(),
        repr(report.infection.lo),
        repr(report.infection.hi),
        repr(report.hospitalization.lo),
        repr(report.hospitalization.hi),
        repr(report.death.lo),
        repr(report.death.hi),
        ";".join(report.flags),
    ]
    return [scenario, *cells] if scenario is not None else cells


def cmd_ingest(args) -> int:
    snapshot = load_snapshot(args.snapshot, allow_mdy_dates=args.allow_mdy_dates)
    start = min(s.start_date for s in snapshot.cases.values())
    end = max(s.end_date for s in snapshot.cases.values())
    print(f"regions: {len(snapshot.cases)}")
    print(f"variant series: {len(snapshot.variants)}")
    print(f"ratio series: {len(snapshot.ratios)}")
    print(f"population entries: {len(snapshot.populations)}")
    print(f"case dates: {start.isoformat()}..{end.isoformat()}")
    if snapshot.dropped_regions:
        print("warnings:")
        for region, reason in snapshot.dropped_regions:
            print(f"  - dropped {region}: {reason}")
        if args.check_only:
            return 2
    return 0


def _profile_from_args(args) -> PersonProfile:
    return PersonProfile(
        age_years=args.age,
        sex=args.sex,
        chronic_illness=args.chronic,
        vaccine=args.vaccine,
        mask=args.mask,
    )


def _config_from_args(args) -> RiskConfig:
    return RiskConfig().with_overrides(k_indoor=args.k_indoor, k_outdoor=args.k_outdoor)


def cmd_risk(args) -> int:
    snapshot = load_snapshot(args.snapshot)
    report = assess(
        snapshot,
        args.region,
        args.date,
        _profile_from_args(args),
        ActivityProfile(n_indoor=args.indoor, n_outdoor=args.outdoor),
        _config_from_args(args),
    )
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["region", *SWEEP_CSV_COLUMNS[1:]])
        writer.writerow([report.region, *_report_row(report)])
        return 0
    rows = [
        ("region", report.region),
        ("date", report.date.isoformat()),
        ("infection", f"[{report.infection.lo!r}, {report.infection.hi!r}]"),
        ("hospitalization", f"[{report.hospitalization.lo!r}, {report.hospitalization.hi!r}]"),
        ("death", f"[{report.death.lo!r}, {report.death.hi!r}]"),
        ("flags", ";".join(report.flags) or "-"),
        ("k_indoor", repr(report.config.k_indoor)),
        ("k_outdoor", repr(report.config.k_outdoor)),
        ("snapshot_time", report.snapshot_time.isoformat()),
    ]
    width = max(len(label) for label, _ in rows) + 2
    for label, value in rows:
        print(f"{label + ':':<{width}}{value}")
    return 0


def _load_sweep_spec(path: Path) -> dict:
    try:
        spec = tomllib.loads(path.read_text(encoding="utf-8"))
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise CovarcError(f"cannot read sweep spec {path}: {exc}") from None
    for field in ("region", "date_from", "date_to"):
        if field not in spec:
            raise CovarcError(f"sweep spec lacks required field {field!r}")
    scenarios = spec.get("scenario", [])
    if not scenarios:
        raise CovarcError("sweep spec needs at least one [[scenario]]")
    names = [s.get("name") for s in scenarios]
    if None in names or len(set(names)) != len(names):
        raise CovarcError("every scenario needs a unique name")
    return spec


def _coerce_date(value) -> dt.date:
    if isinstance(value, dt.date):
        return value
    return dt.date.fromisoformat(str(value))


def run_sweep(snapshot: DataSnapshot, spec: dict) -> list[list[str]]:
    """Rows for the sweep CSV, ordered by scenario name then date."""
    config = RiskConfig(**spec.get("config", {}))
    region = spec["region"]
    date_from = _coerce_date(spec["date_from"])
    date_to = _coerce_date(spec["date_to"])
    rows: list[list[str]] = []
    for scenario in sorted(spec["scenario"], key=lambda s: s["name"]):
        profile = PersonProfile(
            age_years=scenario["age_years"],
            sex=scenario["sex"],
            chronic_illness=scenario["chronic_illness"],
            vaccine=scenario["vaccine"],
            mask=scenario["mask"],
        )
        activity = ActivityProfile(
            n_indoor=scenario["n_indoor"], n_outdoor=scenario["n_outdoor"]
        )
        for day in simulate(snapshot, region, date_from, date_to, profile, activity, config):
            if day.report is None:
                continue
            rows.append(_report_row(day.report, scenario=scenario["name"]))
    return rows


def cmd_simulate(args) -> int:
    spec = _load_sweep_spec(Path(args.spec))
    snapshot_dir = args.snapshot or spec.get("snapshot")
    if not snapshot_dir:
        raise CovarcError("snapshot directory required (--snapshot or 'snapshot' in the spec)")
    out_path = args.out or spec.get("out")
    if not out_path:
        raise CovarcError("output path required (--out or 'out' in the spec)")
    snapshot = load_snapshot(snapshot_dir)
    rows = run_sweep(snapshot, spec)
    with open(out_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SWEEP_CSV_COLUMNS)
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {out_path}")
    return 0


def cmd_serve(args) -> int:
    import logging
    import signal

    import uvicorn

    from .service import create_app, load_service_config

    logging.basicConfig(level=logging.INFO, format="%(name)s %(message)s")
    config = load_service_config(args.config)
    app = create_app(config)
    # uvicorn re-raises the captured signal with original handlers restored
    # after its graceful shutdown; make that a no-op so SIGTERM/SIGINT-driven
    # shutdowns still exit 0
    for sig in (signal.SIGINT, signal.SIGTERM):
        signal.signal(sig, lambda signum, frame: None)
    uvicorn.run(app, host=config.host, port=config.port, log_config=None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covarc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build and validate a snapshot directory")
    p.add_argument("--snapshot", required=True, help="snapshot directory")
    p.add_argument("--check-only", action="store_true", help="exit 2 when warnings are present")
    p.add_argument("--allow-mdy-dates", action="store_true", help="accept M/D/YY case-table headers")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("risk", help="one-shot risk assessment")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--region", required=True, help="canonical region id, e.g. 'united states/franklin ma'")
    p.add_argument("--date", required=True, type=_parse_date)
    p.add_argument("--age", required=True, type=int)
    p.add_argument("--sex", required=True, choices=["male", "female"])
    p.add_argument("--chronic", required=True, type=_parse_bool)
    p.add_argument("--vaccine", required=True)
    p.add_argument("--mask", required=True)
    p.add_argument("--indoor", required=True, type=int)
    p.add_argument("--outdoor", required=True, type=int)
    p.add_argument("--k-indoor", type=float, default=None)
    p.add_argument("--k-outdoor", type=float, default=None)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("simulate", help="run a scenario sweep to CSV")
    p.add_argument("--spec", required=True, help="TOML sweep spec")
    p.add_argument("--out", default=None, help="output CSV path (overrides 'out' in the spec)")
    p.add_argument("--snapshot", default=None, help="snapshot directory (overrides 'snapshot' in the spec)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None, help="TOML service config")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CovarcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
