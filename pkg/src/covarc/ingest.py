"""Snapshot ingest: parse, validate, and bundle all regional input data.

A snapshot directory holds UTF-8 CSV files (header row mandatory, comma
separated, LF or CRLF endings):

    cases.csv        wide layout: country,region,<date>,<date>,...
                     one row per region, cumulative confirmed counts,
                     date columns ISO ``YYYY-MM-DD`` and consecutive
    variants.csv     long layout: country,region,date,variant,share
    ratios.csv       long layout: country,region,date,ratio
                     (survey-to-official confirmed-case ratio, > 0)
    populations.csv  country,region,population
    tables/          optional mask_ffe.csv / vaccine_efficacy.csv /
                     severity.csv; packaged defaults are used when absent

variants.csv and ratios.csv may be missing entirely; the engine then falls
back to original-strain-only mixes and a unit under-reporting ratio.
Ingest runs single-threaded; the resulting DataSnapshot is immutable and
safe to share across any number of concurrent evaluators.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import IngestError
from .tables import (
    MaskTable,
    SeverityTable,
    VaccineTable,
    load_default_tables,
    mask_table_csv,
    parse_mask_table,
    parse_severity_table,
    parse_vaccine_table,
    severity_table_csv,
    vaccine_table_csv,
)
from .variants import VARIANT_NAMES

log = logging.getLogger("covarc.ingest")


@dataclass(frozen=True)
class RegionKey:
    country: str
    region: str | None = None

    def __post_init__(self):
        if not self.country.strip():
            raise IngestError("region key requires a non-empty country")

    @property
    def canonical_id(self) -> str:
        return f"{self.country.strip().lower()}/{(self.region or '').strip().lower()}"

    @property
    def display(self) -> str:
        return f"{self.country}/{self.region}" if self.region else self.country


@dataclass(frozen=True)
class CaseSeries:
    """Cumulative confirmed counts on consecutive days.

    Counts may decrease day to day (upstream corrections); differencing
    clamps those to zero downstream.
    """

    region: RegionKey
    start_date: dt.date
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) < 1:
            raise IngestError(f"case series for {self.region.display} is empty")
        if any(v < 0 for v in self.values):
            raise IngestError(f"negative cumulative count for {self.region.display}")

    @property
    def end_date(self) -> dt.date:
        return self.start_date + dt.timedelta(days=len(self.values) - 1)

    def index_of(self, on: dt.date) -> int:
        return (on - self.start_date).days


@dataclass(frozen=True)
class VariantShareSeries:
    """Dense per-variant daily values (proportions or sequence counts)."""

    region: RegionKey
    start_date: dt.date
    shares: Mapping[str, tuple[float, ...]]

    def __post_init__(self):
        if set(self.shares) != set(VARIANT_NAMES):
            raise IngestError(f"variant series must cover {VARIANT_NAMES}")
        lengths = {len(v) for v in self.shares.values()}
        if len(lengths) != 1 or 0 in lengths:
            raise IngestError(f"ragged variant series for {self.region.display}")
        for name, values in self.shares.items():
            if any(v < 0 for v in values):
                raise IngestError(f"negative share for {name} in {self.region.display}")

    @property
    def n_days(self) -> int:
        return len(next(iter(self.shares.values())))


@dataclass(frozen=True)
class RatioSeries:
    """Sparse survey-to-official case ratios, sorted by date."""

    region: RegionKey
    entries: tuple[tuple[dt.date, float], ...]

    def __post_init__(self):
        if any(r <= 0 for _, r in self.entries):
            raise IngestError(f"non-positive ratio for {self.region.display}")
        dates = [d for d, _ in self.entries]
        if dates != sorted(dates) or len(set(dates)) != len(dates):
            raise IngestError(f"unsorted or duplicate ratio dates for {self.region.display}")

    @property
    def start_date(self) -> dt.date | None:
        return self.entries[0][0] if self.entries else None

    def at_or_before(self, on: dt.date, max_age_days: int) -> float | None:
        """Most recent ratio dated within ``max_age_days`` at or before ``on``."""
        dates = [d for d, _ in self.entries]
        i = bisect_right(dates, on) - 1
        if i < 0:
            return None
        found_date, ratio = self.entries[i]
        if (on - found_date).days > max_age_days:
            return None
        return ratio


@dataclass(frozen=True)
class DataSnapshot:
    """Immutable bundle of all series and static tables for one ingest run.

    ``cache`` holds derived artifacts (smoothed series); population is
    idempotent and excluded from equality.
    """

    cases: Mapping[str, CaseSeries]
    variants: Mapping[str, VariantShareSeries]
    ratios: Mapping[str, RatioSeries]
    populations: Mapping[str, int]
    mask_table: MaskTable
    vaccine_table: VaccineTable
    severity_table: SeverityTable
    snapshot_time: dt.datetime
    dropped_regions: tuple[tuple[str, str], ...] = ()
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.cases:
            raise IngestError("snapshot has zero usable regions")
        missing = [r for r in self.cases if r not in self.populations]
        if missing:
            raise IngestError(f"regions lack population entries: {sorted(missing)}")

    def region_ids(self) -> list[str]:
        return sorted(self.cases)

    def region_key(self, region: str) -> RegionKey:
        return self.cases[region].region


def _read_rows(raw: str, source: str, expected: list[str]) -> Iterable[tuple[int, dict[str, str]]]:
    reader = csv.reader(io.StringIO(raw))
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        return
    if header != expected:
        raise IngestError(
            f"expected header {','.join(expected)!r}, got {','.join(header)!r}", source=source
        )
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(expected):
            raise IngestError(f"row {lineno}: expected {len(expected)} cells, got {len(row)}", source=source)
        yield lineno, dict(zip(expected, (c.strip() for c in row)))


def _parse_header_date(cell: str, source: str, allow_mdy: bool) -> dt.date:
    text = cell.strip()
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        pass
    if allow_mdy:
        # Upstream wide exports label columns M/D/YY.
        try:
            month, day, year = text.split("/")
            return dt.date(2000 + int(year) if int(year) < 100 else int(year), int(month), int(day))
        except (ValueError, TypeError):
            pass
    raise IngestError(f"unparseable date column {cell!r}", source=source)


def parse_case_table(raw: str, source: str = "cases.csv", *, allow_mdy_dates: bool = False) -> list[CaseSeries]:
    """Parse the wide cumulative-cases layout.

    Column order defines consecutive dates; a gap between date columns is an
    ingest error, as are non-numeric cells and duplicate regions.
    """
    reader = csv.reader(io.StringIO(raw))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("empty file", source=source) from None
    if len(header) < 3 or header[0].strip().lower() != "country" or header[1].strip().lower() != "region":
        raise IngestError("header must start with country,region and carry date columns", source=source)
    dates = [_parse_header_date(c, source, allow_mdy_dates) for c in header[2:]]
    for prev, cur in zip(dates, dates[1:]):
        if (cur - prev).days != 1:
            raise IngestError(f"date columns not consecutive: {prev} then {cur}", source=source)

    out: list[CaseSeries] = []
    seen: set[str] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise IngestError(f"row {lineno}: expected {len(header)} cells, got {len(row)}", source=source)
        key = RegionKey(country=row[0].strip(), region=row[1].strip() or None)
        if key.canonical_id in seen:
            raise IngestError(f"duplicate region {key.canonical_id!r}", source=source)
        seen.add(key.canonical_id)
        values = []
        for cell, on in zip(row[2:], dates):
            try:
                count = int(cell)
            except ValueError:
                raise IngestError(
                    f"non-numeric count at ({key.display}, {on.isoformat()})", source=source
                ) from None
            if count < 0:
                raise IngestError(
                    f"negative count at ({key.display}, {on.isoformat()})", source=source
                )
            values.append(count)
        out.append(CaseSeries(region=key, start_date=dates[0], values=tuple(values)))
    return out


def parse_variant_table(raw: str, source: str = "variants.csv") -> list[VariantShareSeries]:
    """Parse long-format variant rows into dense per-day, per-variant series.

    Days and variants absent from the file default to 0 within each region's
    observed date range.
    """
    per_region: dict[str, dict] = {}
    for lineno, row in _read_rows(raw, source, ["country", "region", "date", "variant", "share"]):
        key = RegionKey(country=row["country"], region=row["region"] or None)
        variant = row["variant"].lower()
        if variant not in VARIANT_NAMES:
            raise IngestError(
                f"row {lineno}: unknown variant {row['variant']!r}; allowed: "
                f"{', '.join(VARIANT_NAMES)}",
                source=source,
            )
        try:
            on = dt.date.fromisoformat(row["date"])
        except ValueError:
            raise IngestError(f"row {lineno}: unparseable date {row['date']!r}", source=source) from None
        try:
            share = float(row["share"])
        except ValueError:
            raise IngestError(f"row {lineno}: non-numeric share {row['share']!r}", source=source) from None
        if share < 0:
            raise IngestError(f"row {lineno}: negative share", source=source)
        bucket = per_region.setdefault(key.canonical_id, {"key": key, "cells": {}})
        bucket["cells"][(on, variant)] = share

    out = []
    for canonical_id in sorted(per_region):
        bucket = per_region[canonical_id]
        cells: dict[tuple[dt.date, str], float] = bucket["cells"]
        start = min(on for on, _ in cells)
        end = max(on for on, _ in cells)
        n_days = (end - start).days + 1
        shares = {}
        for variant in VARIANT_NAMES:
            shares[variant] = tuple(
                cells.get((start + dt.timedelta(days=i), variant), 0.0) for i in range(n_days)
            )
        out.append(VariantShareSeries(region=bucket["key"], start_date=start, shares=shares))
    return out


def parse_survey_ratio(raw: str, source: str = "ratios.csv") -> list[RatioSeries]:
    per_region: dict[str, dict] = {}
    for lineno, row in _read_rows(raw, source, ["country", "region", "date", "ratio"]):
        key = RegionKey(country=row["country"], region=row["region"] or None)
        try:
            on = dt.date.fromisoformat(row["date"])
        except ValueError:
            raise IngestError(f"row {lineno}: unparseable date {row['date']!r}", source=source) from None
        try:
            ratio = float(row["ratio"])
        except ValueError:
            raise IngestError(f"row {lineno}: non-numeric ratio {row['ratio']!r}", source=source) from None
        if ratio <= 0:
            raise IngestError(f"row {lineno}: ratio must be > 0, got {ratio}", source=source)
        bucket = per_region.setdefault(key.canonical_id, {"key": key, "points": {}})
        if on in bucket["points"]:
            raise IngestError(f"row {lineno}: duplicate ratio for {key.canonical_id} on {on}", source=source)
        bucket["points"][on] = ratio

    return [
        RatioSeries(
            region=per_region[cid]["key"],
            entries=tuple(sorted(per_region[cid]["points"].items())),
        )
        for cid in sorted(per_region)
    ]


def parse_population_table(raw: str, source: str = "populations.csv") -> dict[str, tuple[RegionKey, int]]:
    out: dict[str, tuple[RegionKey, int]] = {}
    for lineno, row in _read_rows(raw, source, ["country", "region", "population"]):
        key = RegionKey(country=row["country"], region=row["region"] or None)
        if key.canonical_id in out:
            raise IngestError(f"row {lineno}: duplicate region {key.canonical_id!r}", source=source)
        try:
            population = int(row["population"])
        except ValueError:
            raise IngestError(f"row {lineno}: non-numeric population", source=source) from None
        if population < 1:
            raise IngestError(f"row {lineno}: population must be >= 1", source=source)
        out[key.canonical_id] = (key, population)
    return out


def build_snapshot(
    cases: list[CaseSeries],
    variants: list[VariantShareSeries],
    ratios: list[RatioSeries],
    populations: dict[str, tuple[RegionKey, int]],
    mask_table: MaskTable,
    vaccine_table: VaccineTable,
    severity_table: SeverityTable,
    snapshot_time: dt.datetime | None = None,
) -> DataSnapshot:
    """Cross-validate parsed inputs and assemble the immutable snapshot.

    Regions with cases but no population entry are dropped with a warning
    and recorded in the snapshot metadata; zero surviving regions is fatal.
    """
    case_map: dict[str, CaseSeries] = {}
    dropped: list[tuple[str, str]] = []
    for series in cases:
        cid = series.region.canonical_id
        if cid in case_map:
            raise IngestError(f"duplicate region {cid!r} across case series")
        if cid not in populations:
            dropped.append((cid, "no population entry"))
            log.warning("dropping region %s: no population entry", cid)
            continue
        case_map[cid] = series
    if not case_map:
        raise IngestError("no usable regions: every case series lacks a population entry")

    variant_map = {}
    for series in variants:
        cid = series.region.canonical_id
        if cid in variant_map:
            raise IngestError(f"duplicate region {cid!r} across variant series")
        if cid not in case_map:
            dropped.append((cid, "variant data without a case series"))
            log.warning("dropping variant series for %s: no case series", cid)
            continue
        variant_map[cid] = series
    ratio_map = {}
    for series in ratios:
        cid = series.region.canonical_id
        if cid in ratio_map:
            raise IngestError(f"duplicate region {cid!r} across ratio series")
        if cid not in case_map:
            dropped.append((cid, "ratio data without a case series"))
            log.warning("dropping ratio series for %s: no case series", cid)
            continue
        ratio_map[cid] = series

    return DataSnapshot(
        cases=MappingProxyType(case_map),
        variants=MappingProxyType(variant_map),
        ratios=MappingProxyType(ratio_map),
        populations=MappingProxyType({cid: pop for cid, (_, pop) in populations.items()}),
        mask_table=mask_table,
        vaccine_table=vaccine_table,
        severity_table=severity_table,
        snapshot_time=snapshot_time or dt.datetime.now(dt.timezone.utc),
        dropped_regions=tuple(dropped),
    )


def load_snapshot(
    directory: str | Path,
    *,
    snapshot_time: dt.datetime | None = None,
    allow_mdy_dates: bool = False,
) -> DataSnapshot:
    """Load a snapshot directory; see the module docstring for the layout."""
    root = Path(directory)
    if not root.is_dir():
        raise IngestError(f"snapshot directory does not exist: {root}")

    def read(name: str) -> str:
        path = root / name
        if not path.is_file():
            raise IngestError(f"missing required file {name}", source=str(root))
        return path.read_text(encoding="utf-8")

    def read_optional(name: str) -> str | None:
        path = root / name
        return path.read_text(encoding="utf-8") if path.is_file() else None

    cases = parse_case_table(read("cases.csv"), allow_mdy_dates=allow_mdy_dates)
    populations = parse_population_table(read("populations.csv"))
    variants_raw = read_optional("variants.csv")
    ratios_raw = read_optional("ratios.csv")
    variants = parse_variant_table(variants_raw) if variants_raw is not None else []
    ratios = parse_survey_ratio(ratios_raw) if ratios_raw is not None else []

    tables_dir = root / "tables"
    if tables_dir.is_dir():
        mask = parse_mask_table((tables_dir / "mask_ffe.csv").read_text(encoding="utf-8"))
        vaccine = parse_vaccine_table((tables_dir / "vaccine_efficacy.csv").read_text(encoding="utf-8"))
        severity = parse_severity_table((tables_dir / "severity.csv").read_text(encoding="utf-8"))
    else:
        mask, vaccine, severity = load_default_tables()

    return build_snapshot(
        cases, variants, ratios, populations, mask, vaccine, severity, snapshot_time=snapshot_time
    )


# ---------------------------------------------------------------------------
# Serialization back to the directory format (canonical form).

def serialize_snapshot(snapshot: DataSnapshot) -> dict[str, str]:
    """Render a snapshot as {relative path: file content}."""
    files: dict[str, str] = {}

    all_keys: dict[str, RegionKey] = {}
    for mapping in (snapshot.cases, snapshot.variants, snapshot.ratios):
        for cid, series in mapping.items():
            all_keys.setdefault(cid, series.region)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    start = min(s.start_date for s in snapshot.cases.values())
    end = max(s.end_date for s in snapshot.cases.values())
    if any(s.start_date != start or s.end_date != end for s in snapshot.cases.values()):
        # The wide layout shares one date axis; snapshots built from it always do.
        raise IngestError("cannot serialize snapshot with unaligned case series")
    n_days = (end - start).days + 1
    writer.writerow(
        ["country", "region", *((start + dt.timedelta(days=i)).isoformat() for i in range(n_days))]
    )
    for cid in sorted(snapshot.cases):
        series = snapshot.cases[cid]
        writer.writerow([series.region.country, series.region.region or "", *series.values])
    files["cases.csv"] = buf.getvalue()

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["country", "region", "date", "variant", "share"])
    for cid in sorted(snapshot.variants):
        series = snapshot.variants[cid]
        for i in range(series.n_days):
            on = series.start_date + dt.timedelta(days=i)
            for variant in VARIANT_NAMES:
                writer.writerow(
                    [
                        series.region.country,
                        series.region.region or "",
                        on.isoformat(),
                        variant,
                        repr(series.shares[variant][i]),
                    ]
                )
    files["variants.csv"] = buf.getvalue()

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["country", "region", "date", "ratio"])
    for cid in sorted(snapshot.ratios):
        series = snapshot.ratios[cid]
        for on, ratio in series.entries:
            writer.writerow(
                [series.region.country, series.region.region or "", on.isoformat(), repr(ratio)]
            )
    files["ratios.csv"] = buf.getvalue()

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["country", "region", "population"])
    for cid in sorted(snapshot.populations):
        key = all_keys.get(cid)
        country, region = (key.country, key.region or "") if key else (cid.split("/")[0], cid.split("/", 1)[1])
        writer.writerow([country, region, snapshot.populations[cid]])
    files["populations.csv"] = buf.getvalue()

    files["tables/mask_ffe.csv"] = mask_table_csv(snapshot.mask_table)
    files["tables/vaccine_efficacy.csv"] = vaccine_table_csv(snapshot.vaccine_table)
    files["tables/severity.csv"] = severity_table_csv(snapshot.severity_table)
    return files


def write_snapshot(snapshot: DataSnapshot, directory: str | Path) -> None:
    root = Path(directory)
    for rel, content in serialize_snapshot(snapshot).items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
