"""Active-case density from cumulative confirmed-case series.

Daily new cases are first differences of the cumulative series with
negative corrections clamped to zero. The infectious pool on a date is the
sum of the 14 daily values ending there, and the per-capita density range
stretches its upper bound by the survey under-reporting ratio:

    lo = window_sum / population
    hi = window_sum * ratio / population        (both clamped to <= 1)
"""

from __future__ import annotations

import datetime as dt
from typing import TYPE_CHECKING, NamedTuple

from .errors import InsufficientDataError
from .intervals import Interval

if TYPE_CHECKING:
    from .ingest import CaseSeries, DataSnapshot

WINDOW_DAYS = 14

# Survey series are sparse; tolerate entries this stale before defaulting.
RATIO_MAX_STALENESS_DAYS = 14


def daily_new_cases(series: "CaseSeries") -> list[int]:
    """First differences of the cumulative counts, clamped at zero."""
    if len(series.values) < 2:
        raise InsufficientDataError(
            f"need at least 2 days of cases for {series.region.display}, have {len(series.values)}",
            required_from=series.start_date,
            required_to=series.start_date + dt.timedelta(days=1),
        )
    values = series.values
    return [max(0, values[i] - values[i - 1]) for i in range(1, len(values))]


def active_window_sum(series: "CaseSeries", on: dt.date) -> int:
    """Sum of the 14 daily new-case values ending at ``on``.

    Requires the series to cover [on - 14 days, on]: 15 cumulative values
    giving 14 differences.
    """
    required_from = on - dt.timedelta(days=WINDOW_DAYS)
    index = series.index_of(on)
    if index < WINDOW_DAYS or index >= len(series.values):
        raise InsufficientDataError(
            f"case series for {series.region.display} covers "
            f"{series.start_date.isoformat()}..{series.end_date.isoformat()}, "
            f"need {required_from.isoformat()}..{on.isoformat()}",
            required_from=required_from,
            required_to=on,
        )
    values = series.values
    total = 0
    for i in range(index - WINDOW_DAYS + 1, index + 1):
        total += max(0, values[i] - values[i - 1])
    return total


class RatioLookup(NamedTuple):
    value: float
    no_survey_data: bool


def underreport_ratio(snapshot: "DataSnapshot", region: str, on: dt.date) -> RatioLookup:
    """Survey-to-official ratio for a region/date, total via defaults.

    Uses the nearest entry at or before ``on`` within the staleness bound,
    clamped to >= 1 (the official count is always the lower bound). Absent
    data yields 1.0 plus a no-survey-data provenance flag.
    """
    series = snapshot.ratios.get(region)
    if series is None:
        return RatioLookup(1.0, True)
    ratio = series.at_or_before(on, RATIO_MAX_STALENESS_DAYS)
    if ratio is None:
        return RatioLookup(1.0, True)
    return RatioLookup(max(1.0, ratio), False)


def case_density_range(snapshot: "DataSnapshot", region: str, on: dt.date) -> Interval:
    """Per-capita active-case density interval for a region/date."""
    series = snapshot.cases[region]
    window = active_window_sum(series, on)
    ratio = underreport_ratio(snapshot, region, on).value
    population = snapshot.populations[region]
    lo = window / population
    hi = (window * ratio) / population
    return Interval(min(lo, 1.0), min(hi, 1.0))
