"""Static lookup tables: mask filtration, vaccine efficacy, severity factors.

All three ship as CSV files under ``covarc/data/tables/`` and may be
overridden per snapshot by a ``tables/`` subdirectory. Cells holding a
range are written ``lo-hi``; a lone ``-`` (and, for severity folds, the
phrases "Under Investigation" / "Possibly Increased") marks a value with
no published number, which loads as a neutral placeholder plus a flag so
reports can surface the gap.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .errors import IngestError, UnknownNameError
from .intervals import ONE, Interval
from .variants import VARIANT_NAMES

MASK_NAMES = (
    "2-layer woven nylon mask without nose bridge",
    "2-layer woven nylon mask with nose bridge",
    "2-layer woven nylon with nose bridge and filter insert",
    "2-layer woven nylon with nose bridge washed",
    "Cotton Bandana folded surgeon general style",
    "Cotton Bandana folded bandit style",
    "Single-layer woven polyester gaiter",
    "Single-layer woven polyester mask with ties",
    "Non-woven polypropylene mask with fixed ear loops",
    "3-layer knitted cotton mask with ear loops",
    "N95 respirator",
    "Surgical mask with ties",
    "Procedure mask with ear loops",
    "Procedure mask with loops tied, corners tucked",
    "Procedure mask with loops tied, corners tucked and ear guard",
    "Procedure mask with Clawed hair clip",
    "Procedure mask with fix-the-mask technique (rubber bands)",
    "Procedure mask with Nylon hosiery sleeve",
    "No Mask",
)

AGE_BANDS = ("0-17", "18-49", "50-64", "65+")

_UNKNOWN_CELL_WORDS = {"-", "", "under investigation", "possibly increased"}


@dataclass(frozen=True)
class MaskTable:
    ffe: Mapping[str, float]

    def __post_init__(self):
        missing = set(MASK_NAMES) - set(self.ffe)
        extra = set(self.ffe) - set(MASK_NAMES)
        if missing or extra:
            raise IngestError(
                f"mask table must carry exactly the {len(MASK_NAMES)} known masks"
                f" (missing: {sorted(missing)}, unexpected: {sorted(extra)})"
            )
        for name, value in self.ffe.items():
            if not (0.0 <= value <= 1.0):
                raise IngestError(f"FFE out of [0, 1] for {name!r}: {value}")
        if self.ffe["No Mask"] != 0.0:
            raise IngestError("'No Mask' must have FFE 0")

    def names(self) -> list[str]:
        return list(MASK_NAMES)

    def ffe_of(self, mask: str) -> float:
        try:
            return self.ffe[mask]
        except KeyError:
            raise UnknownNameError("mask", mask, self.names()) from None


@dataclass(frozen=True)
class VaccineTable:
    """Efficacy intervals per (vaccine-and-dose, variant).

    ``unknown`` lists cells published without a number; they load as [0, 0]
    and taint any mix that touches them with the unknown-efficacy flag.
    """

    efficacy: Mapping[str, Mapping[str, Interval]]
    unknown: frozenset[tuple[str, str]]

    def __post_init__(self):
        for vaccine, row in self.efficacy.items():
            if set(row) != set(VARIANT_NAMES):
                raise IngestError(f"vaccine row {vaccine!r} must cover {VARIANT_NAMES}")
            for variant, iv in row.items():
                if iv.lo < 0.0 or iv.hi > 1.0:
                    raise IngestError(
                        f"efficacy out of [0, 1] for ({vaccine!r}, {variant}): "
                        f"[{iv.lo}, {iv.hi}]"
                    )
        none_row = self.efficacy.get("No Vaccine")
        if none_row is None:
            raise IngestError("vaccine table must carry a 'No Vaccine' row")
        if any(iv != Interval(0.0, 0.0) for iv in none_row.values()):
            raise IngestError("'No Vaccine' row must be all zero")

    def names(self) -> list[str]:
        return list(self.efficacy)

    def cell(self, vaccine: str, variant: str) -> tuple[Interval, bool]:
        try:
            row = self.efficacy[vaccine]
        except KeyError:
            raise UnknownNameError("vaccine", vaccine, self.names()) from None
        return row[variant], (vaccine, variant) in self.unknown


@dataclass(frozen=True)
class SeverityTable:
    """Base hospitalization/death rates by age band plus fold factors.

    Variant folds are relative to the original strain (original is fixed at
    [1, 1]); variants with no published fold sit at [1, 1] and are listed in
    the unknown sets. Sex only modulates death; chronic illness modulates
    both.
    """

    hosp_rate_by_age: Mapping[str, float]
    death_rate_by_age: Mapping[str, float]
    hosp_variant_fold: Mapping[str, Interval]
    death_variant_fold: Mapping[str, Interval]
    unknown_hosp_variants: frozenset[str]
    unknown_death_variants: frozenset[str]
    death_sex_fold: Mapping[str, Interval]
    chronic_hosp_fold: Interval
    chronic_death_fold: Interval

    def __post_init__(self):
        for band in AGE_BANDS:
            for rates in (self.hosp_rate_by_age, self.death_rate_by_age):
                if band not in rates:
                    raise IngestError(f"severity table lacks age band {band!r}")
                if not (0.0 <= rates[band] <= 1.0):
                    raise IngestError(f"base rate out of [0, 1] for band {band!r}")
        for folds in (self.hosp_variant_fold, self.death_variant_fold):
            if set(folds) != set(VARIANT_NAMES):
                raise IngestError(f"variant folds must cover {VARIANT_NAMES}")
            for variant, iv in folds.items():
                if iv.lo < 0.0:
                    raise IngestError(f"negative fold for variant {variant}")
        if self.hosp_variant_fold["original"] != ONE or self.death_variant_fold["original"] != ONE:
            raise IngestError("original-variant folds must be [1, 1]")
        for sex in ("male", "female"):
            if sex not in self.death_sex_fold:
                raise IngestError(f"severity table lacks sex fold for {sex!r}")
        self._assert_products_bounded()

    def _assert_products_bounded(self):
        # Each single fold times the largest base rate must stay a probability.
        max_hosp = max(self.hosp_rate_by_age[b] for b in AGE_BANDS)
        max_death = max(self.death_rate_by_age[b] for b in AGE_BANDS)
        hosp_folds = [self.chronic_hosp_fold, *self.hosp_variant_fold.values()]
        death_folds = [
            self.chronic_death_fold,
            *self.death_variant_fold.values(),
            *self.death_sex_fold.values(),
        ]
        for fold in hosp_folds:
            if fold.hi * max_hosp > 1.0:
                raise IngestError(f"hospitalization fold x base exceeds 1: {fold}")
        for fold in death_folds:
            if fold.hi * max_death > 1.0:
                raise IngestError(f"death fold x base exceeds 1: {fold}")

    def age_band(self, age_years: int) -> str:
        if age_years < 0:
            raise ValueError("age must be non-negative")
        if age_years <= 17:
            return "0-17"
        if age_years <= 49:
            return "18-49"
        if age_years <= 64:
            return "50-64"
        return "65+"


def _rows(text: str, source: str, expected_header: list[str]) -> list[dict[str, str]]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("empty file", source=source) from None
    if [h.strip().lower() for h in header] != expected_header:
        raise IngestError(
            f"expected header {','.join(expected_header)!r}, got {','.join(header)!r}",
            source=source,
        )
    out = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(expected_header):
            raise IngestError(f"row {lineno}: expected {len(expected_header)} cells", source=source)
        out.append(dict(zip(expected_header, (cell.strip() for cell in row))))
    return out


def _parse_number(cell: str, source: str, context: str) -> float:
    try:
        return float(cell)
    except ValueError:
        raise IngestError(f"non-numeric value {cell!r} at {context}", source=source) from None


def _parse_rate(cell: str, source: str, context: str) -> float:
    """A probability, written either as a percentage ("2.5%") or a fraction."""
    if cell.endswith("%"):
        return _parse_number(cell[:-1], source, context) / 100.0
    return _parse_number(cell, source, context)


def _parse_range_cell(cell: str, source: str, context: str) -> Interval | None:
    """Parse "x", "lo-hi", or "mid (lo-hi)"; None for cells with no number."""
    s = cell.strip()
    if s.lower() in _UNKNOWN_CELL_WORDS:
        return None
    if "(" in s and s.endswith(")"):
        s = s[s.index("(") + 1 : -1].strip()
    parts = [p.strip() for p in s.split("-")]
    if len(parts) == 1:
        return Interval.point(_parse_number(parts[0], source, context))
    if len(parts) == 2:
        return Interval(
            _parse_number(parts[0], source, context),
            _parse_number(parts[1], source, context),
        )
    raise IngestError(f"unparseable range {cell!r} at {context}", source=source)


def parse_mask_table(text: str, source: str = "mask_ffe.csv") -> MaskTable:
    ffe = {}
    for row in _rows(text, source, ["mask", "ffe"]):
        name = row["mask"]
        if name in ffe:
            raise IngestError(f"duplicate mask {name!r}", source=source)
        ffe[name] = _parse_number(row["ffe"], source, f"mask {name!r}")
    return MaskTable(ffe=ffe)


def parse_vaccine_table(text: str, source: str = "vaccine_efficacy.csv") -> VaccineTable:
    header = ["vaccine", "normal", "alpha", "beta", "gamma", "delta", "omicron"]
    column_to_variant = {"normal": "original"}
    efficacy: dict[str, dict[str, Interval]] = {}
    unknown = set()
    for row in _rows(text, source, header):
        name = row["vaccine"]
        if name in efficacy:
            raise IngestError(f"duplicate vaccine {name!r}", source=source)
        cells = {}
        for column in header[1:]:
            variant = column_to_variant.get(column, column)
            iv = _parse_range_cell(row[column], source, f"({name!r}, {variant})")
            if iv is None:
                iv = Interval(0.0, 0.0)
                unknown.add((name, variant))
            cells[variant] = iv
        efficacy[name] = cells
    return VaccineTable(efficacy=efficacy, unknown=frozenset(unknown))


def parse_severity_table(text: str, source: str = "severity.csv") -> SeverityTable:
    header = ["section", "key", "hospitalization", "death"]
    hosp_rate: dict[str, float] = {}
    death_rate: dict[str, float] = {}
    hosp_fold: dict[str, Interval] = {"original": ONE}
    death_fold: dict[str, Interval] = {"original": ONE}
    unknown_hosp: set[str] = set()
    unknown_death: set[str] = set()
    sex_fold: dict[str, Interval] = {}
    chronic_hosp: Interval | None = None
    chronic_death: Interval | None = None

    for row in _rows(text, source, header):
        section, key = row["section"].lower(), row["key"].lower()
        context = f"({section}, {key})"
        if section == "age":
            hosp_rate[key] = _parse_rate(row["hospitalization"], source, context)
            death_rate[key] = _parse_rate(row["death"], source, context)
        elif section == "variant":
            if key not in VARIANT_NAMES:
                raise IngestError(f"unknown variant {key!r}", source=source)
            hosp = _parse_range_cell(row["hospitalization"], source, context)
            death = _parse_range_cell(row["death"], source, context)
            hosp_fold[key] = hosp if hosp is not None else ONE
            death_fold[key] = death if death is not None else ONE
            if hosp is None:
                unknown_hosp.add(key)
            if death is None:
                unknown_death.add(key)
        elif section == "sex":
            fold = _parse_range_cell(row["death"], source, context)
            sex_fold[key] = fold if fold is not None else ONE
        elif section == "chronic":
            chronic_hosp = _parse_range_cell(row["hospitalization"], source, context) or ONE
            chronic_death = _parse_range_cell(row["death"], source, context) or ONE
        else:
            raise IngestError(f"unknown section {section!r}", source=source)

    if chronic_hosp is None or chronic_death is None:
        raise IngestError("severity table lacks the chronic-illness row", source=source)
    # Variants the table never mentions have no published fold either.
    for variant in VARIANT_NAMES:
        if variant == "original":
            continue
        if variant not in hosp_fold:
            hosp_fold[variant] = ONE
            unknown_hosp.add(variant)
        if variant not in death_fold:
            death_fold[variant] = ONE
            unknown_death.add(variant)
    return SeverityTable(
        hosp_rate_by_age=hosp_rate,
        death_rate_by_age=death_rate,
        hosp_variant_fold=hosp_fold,
        death_variant_fold=death_fold,
        unknown_hosp_variants=frozenset(unknown_hosp),
        unknown_death_variants=frozenset(unknown_death),
        death_sex_fold=sex_fold,
        chronic_hosp_fold=chronic_hosp,
        chronic_death_fold=chronic_death,
    )


def load_default_tables() -> tuple[MaskTable, VaccineTable, SeverityTable]:
    base = resources.files("covarc").joinpath("data/tables")
    return (
        parse_mask_table(base.joinpath("mask_ffe.csv").read_text(encoding="utf-8")),
        parse_vaccine_table(base.joinpath("vaccine_efficacy.csv").read_text(encoding="utf-8")),
        parse_severity_table(base.joinpath("severity.csv").read_text(encoding="utf-8")),
    )


# ---------------------------------------------------------------------------
# Canonical writers, used when serializing a snapshot back to disk.

def _format_number(x: float) -> str:
    return repr(float(x))


def _format_interval(iv: Interval, unknown: bool) -> str:
    if unknown:
        return "-"
    if iv.is_point:
        return _format_number(iv.lo)
    return f"{_format_number(iv.lo)}-{_format_number(iv.hi)}"




def mask_table_csv(table: MaskTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["mask", "ffe"])
    for name in MASK_NAMES:
        writer.writerow([name, _format_number(table.ffe[name])])
    return buf.getvalue()


def vaccine_table_csv(table: VaccineTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vaccine", "normal", "alpha", "beta", "gamma", "delta", "omicron"])
    for vaccine, row in table.efficacy.items():
        cells = [
            _format_interval(row[variant], (vaccine, variant) in table.unknown)
            for variant in VARIANT_NAMES
        ]
        writer.writerow([vaccine, *cells])
    return buf.getvalue()


def severity_table_csv(table: SeverityTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["section", "key", "hospitalization", "death"])
    for band in table.hosp_rate_by_age:
        writer.writerow(
            [
                "age",
                band,
                _format_number(table.hosp_rate_by_age[band]),
                _format_number(table.death_rate_by_age[band]),
            ]
        )
    for variant in VARIANT_NAMES:
        if variant == "original":
            continue
        writer.writerow(
            [
                "variant",
                variant,
                _format_interval(
                    table.hosp_variant_fold[variant], variant in table.unknown_hosp_variants
                ),
                _format_interval(
                    table.death_variant_fold[variant], variant in table.unknown_death_variants
                ),
            ]
        )
    for sex in ("male", "female"):
        writer.writerow(["sex", sex, "-", _format_interval(table.death_sex_fold[sex], False)])
    writer.writerow(
        [
            "chronic",
            "any",
            _format_interval(table.chronic_hosp_fold, False),
            _format_interval(table.chronic_death_fold, False),
        ]
    )
    return buf.getvalue()
