import datetime as dt

import numpy as np
import pytest

from covarc import InsufficientDataError, load_snapshot
from covarc.epidemiology import (
    active_window_sum,
    case_density_range,
    daily_new_cases,
    underreport_ratio,
)
from covarc.ingest import CaseSeries, RatioSeries, RegionKey, build_snapshot, parse_case_table
from covarc.tables import load_default_tables

from .conftest import write_single_region_snapshot
from .oracles import brute_window_sum

START = dt.date(2021, 1, 1)

# Brute-force value over tests/fixtures/franklin_synth.csv at its 31st day,
# frozen from an independent run of oracles.brute_window_sum.
FRANKLIN_DAY30_DATE = dt.date(2020, 10, 1)
FRANKLIN_DAY30_WINDOW = 1678


def series_from(values, start=START) -> CaseSeries:
    return CaseSeries(region=RegionKey("X"), start_date=start, values=tuple(values))


class TestDailyNewCases:
    def test_differences(self):
        assert daily_new_cases(series_from([100, 110, 125])) == [10, 15]

    def test_negative_differences_clamp_to_zero(self):
        assert daily_new_cases(series_from([100, 110, 125, 120])) == [10, 15, 0]

    def test_single_day_is_insufficient(self):
        with pytest.raises(InsufficientDataError):
            daily_new_cases(series_from([100]))


class TestActiveWindowSum:
    def test_constant_growth(self):
        values = [100 + 5 * i for i in range(20)]
        assert active_window_sum(series_from(values), START + dt.timedelta(days=14)) == 70

    def test_flat_series_is_zero(self):
        values = [500] * 20
        assert active_window_sum(series_from(values), START + dt.timedelta(days=15)) == 0

    def test_franklin_fixture_matches_frozen_oracle(self, franklin_series):
        country, region, start, values = franklin_series
        series = CaseSeries(
            region=RegionKey(country, region or None), start_date=start, values=tuple(values)
        )
        got = active_window_sum(series, FRANKLIN_DAY30_DATE)
        assert got == FRANKLIN_DAY30_WINDOW
        assert got == brute_window_sum(values, series.index_of(FRANKLIN_DAY30_DATE))

    def test_insufficient_history_names_range(self):
        series = series_from([100, 110, 120])
        with pytest.raises(InsufficientDataError) as exc:
            active_window_sum(series, START + dt.timedelta(days=2))
        assert exc.value.required_from == START + dt.timedelta(days=2) - dt.timedelta(days=14)
        assert exc.value.required_to == START + dt.timedelta(days=2)

    def test_matches_oracle_on_randomized_series(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            daily = rng.integers(0, 200, size=30)
            corrections = rng.integers(0, 30, size=30)
            values = np.cumsum(daily) - corrections  # non-monotone on purpose
            values = np.maximum(values, 0).tolist()
            series = series_from(values)
            for index in (14, 20, 29):
                on = START + dt.timedelta(days=index)
                assert active_window_sum(series, on) == brute_window_sum(values, index)


def _snapshot_with_ratio(entries, population=70_000, days=30):
    cases = parse_case_table(
        "country,region," + ",".join((START + dt.timedelta(days=i)).isoformat() for i in range(days))
        + "\nX,," + ",".join(str(1000 + 50 * i) for i in range(days)) + "\n"
    )
    ratios = (
        [RatioSeries(region=RegionKey("X"), entries=tuple(sorted(entries)))] if entries else []
    )
    populations = {"x/": (RegionKey("X"), population)}
    return build_snapshot(cases, [], ratios, populations, *load_default_tables())


class TestUnderreportRatio:
    def test_exact_date(self):
        snapshot = _snapshot_with_ratio([(START + dt.timedelta(days=20), 2.0)])
        lookup = underreport_ratio(snapshot, "x/", START + dt.timedelta(days=20))
        assert lookup == (2.0, False)

    def test_clamps_below_one(self):
        snapshot = _snapshot_with_ratio([(START + dt.timedelta(days=20), 0.8)])
        lookup = underreport_ratio(snapshot, "x/", START + dt.timedelta(days=20))
        assert lookup == (1.0, False)

    def test_absent_region_defaults_with_flag(self):
        snapshot = _snapshot_with_ratio([])
        lookup = underreport_ratio(snapshot, "x/", START + dt.timedelta(days=20))
        assert lookup == (1.0, True)

    def test_staleness_window(self):
        snapshot = _snapshot_with_ratio([(START, 2.0)])
        assert underreport_ratio(snapshot, "x/", START + dt.timedelta(days=14)).value == 2.0
        assert underreport_ratio(snapshot, "x/", START + dt.timedelta(days=15)) == (1.0, True)

    def test_future_entries_ignored(self):
        snapshot = _snapshot_with_ratio([(START + dt.timedelta(days=25), 3.0)])
        assert underreport_ratio(snapshot, "x/", START + dt.timedelta(days=20)) == (1.0, True)


class TestCaseDensityRange:
    def test_worked_example(self):
        # 700 window cases over 70k people, survey ratio 2
        snapshot = _snapshot_with_ratio([(START + dt.timedelta(days=14), 2.0)])
        density = case_density_range(snapshot, "x/", START + dt.timedelta(days=14))
        assert (density.lo, density.hi) == (0.01, 0.02)

    def test_zero_cases(self, tmp_path):
        root = write_single_region_snapshot(tmp_path, "X", START, [5000] * 20)
        snapshot = load_snapshot(root)
        density = case_density_range(snapshot, "x/", START + dt.timedelta(days=16))
        assert (density.lo, density.hi) == (0.0, 0.0)

    def test_clamps_at_one(self, tmp_path):
        values = [0] + [30_000 * i for i in range(1, 20)]
        root = write_single_region_snapshot(tmp_path, "X", START, values, population=10_000)
        snapshot = load_snapshot(root)
        density = case_density_range(snapshot, "x/", START + dt.timedelta(days=15))
        assert (density.lo, density.hi) == (1.0, 1.0)

    def test_bounds_hold_on_randomized_series(self, tmp_path):
        rng = np.random.default_rng(11)
        for k in range(20):
            values = np.cumsum(rng.integers(0, 500, size=25)).tolist()
            root = write_single_region_snapshot(tmp_path / str(k), "X", START, values, population=30_000)
            snapshot = load_snapshot(root)
            density = case_density_range(snapshot, "x/", START + dt.timedelta(days=18))
            assert 0.0 <= density.lo <= density.hi <= 1.0

    def test_monotone_in_added_cases(self, tmp_path):
        base_daily = [20 + (i % 7) for i in range(25)]
        for extra in (0, 3, 10):
            daily = [d + extra for d in base_daily]
            values = np.cumsum(daily).tolist()
            root = write_single_region_snapshot(tmp_path / str(extra), "X", START, values)
            snapshot = load_snapshot(root)
            density = case_density_range(snapshot, "x/", START + dt.timedelta(days=20))
            if extra == 0:
                previous = density
                continue
            assert density.lo >= previous.lo and density.hi >= previous.hi
            previous = density

    def test_doubling_cases_doubles_density_exactly(self, tmp_path):
        base_daily = [20 + (i % 7) for i in range(25)]
        on = START + dt.timedelta(days=20)
        values = np.cumsum(base_daily).tolist()
        doubled = np.cumsum([2 * d for d in base_daily]).tolist()
        snap1 = load_snapshot(write_single_region_snapshot(tmp_path / "a", "X", START, values))
        snap2 = load_snapshot(write_single_region_snapshot(tmp_path / "b", "X", START, doubled))
        d1 = case_density_range(snap1, "x/", on)
        d2 = case_density_range(snap2, "x/", on)
        assert d2.lo == 2.0 * d1.lo and d2.hi == 2.0 * d1.hi
