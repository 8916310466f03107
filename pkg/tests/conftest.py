"""Shared fixtures: deterministic snapshot directories and test corpora."""

from __future__ import annotations

import datetime as dt
from pathlib import Path

import pytest

from covarc import load_snapshot
from covarc.riskmodel import ActivityProfile, PersonProfile

FIXTURES = Path(__file__).parent / "fixtures"

SNAPSHOT_TIME = dt.datetime(2022, 5, 1, 12, 0, tzinfo=dt.timezone.utc)

# Region "x/": 60 days of cases, variants, sparse ratios. Region "y/b":
# shorter series with neither variants nor ratios, to exercise fallbacks.
X_START = dt.date(2021, 6, 1)
X_DAYS = 60
X_DAILY = [40 + ((13 * i) % 25) for i in range(X_DAYS)]
X_POPULATION = 70_000

Y_START = dt.date(2021, 6, 1)
Y_DAYS = 40
Y_DAILY = [10 + (i % 5) for i in range(Y_DAYS)]
Y_POPULATION = 50_000

V_START = dt.date(2021, 4, 15)
V_DAYS = 75


def _cumulative(daily):
    out = []
    total = 0
    for value in daily:
        total += value
        out.append(total)
    return out


def _dates(start, n):
    return [(start + dt.timedelta(days=i)).isoformat() for i in range(n)]


def write_standard_snapshot(root: Path) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    x_cum = _cumulative(X_DAILY)
    y_cum = _cumulative(Y_DAILY)
    # both series must share the wide table's date axis; pad y by holding flat
    y_padded = y_cum + [y_cum[-1]] * (X_DAYS - Y_DAYS)
    lines = ["country,region," + ",".join(_dates(X_START, X_DAYS))]
    lines.append("X,," + ",".join(str(c) for c in x_cum))
    lines.append("Y,B," + ",".join(str(c) for c in y_padded))
    (root / "cases.csv").write_text("\n".join(lines) + "\n")

    (root / "populations.csv").write_text(
        f"country,region,population\nX,,{X_POPULATION}\nY,B,{Y_POPULATION}\n"
    )

    rows = ["country,region,date,variant,share"]
    for i in range(V_DAYS):
        on = (V_START + dt.timedelta(days=i)).isoformat()
        delta = 0.2 + 0.6 * i / (V_DAYS - 1)
        omicron = 0.05 + 0.2 * i / (V_DAYS - 1)
        rows.append(f"X,,{on},delta,{delta!r}")
        rows.append(f"X,,{on},omicron,{omicron!r}")
        rows.append(f"X,,{on},alpha,0.1")
    (root / "variants.csv").write_text("\n".join(rows) + "\n")

    rows = ["country,region,date,ratio"]
    for k in range(18):
        on = (dt.date(2021, 5, 1) + dt.timedelta(days=5 * k)).isoformat()
        rows.append(f"X,,{on},{1.5 + 0.25 * (k % 3)!r}")
    (root / "ratios.csv").write_text("\n".join(rows) + "\n")
    return root


@pytest.fixture(scope="session")
def snapshot_dir(tmp_path_factory) -> Path:
    return write_standard_snapshot(tmp_path_factory.mktemp("snapshot"))


@pytest.fixture(scope="session")
def snapshot(snapshot_dir):
    return load_snapshot(snapshot_dir, snapshot_time=SNAPSHOT_TIME)


def write_single_region_snapshot(root: Path, name: str, start: dt.date, cumulative,
                                 population: int = 100_000) -> Path:
    """Case-only snapshot (no variants/ratios) for one region from a list."""
    root.mkdir(parents=True, exist_ok=True)
    lines = ["country,region," + ",".join(_dates(start, len(cumulative)))]
    lines.append(f"{name},," + ",".join(str(c) for c in cumulative))
    (root / "cases.csv").write_text("\n".join(lines) + "\n")
    (root / "populations.csv").write_text(f"country,region,population\n{name},,{population}\n")
    return root


def read_fixture_series(path: Path) -> tuple[str, str, dt.date, list[int]]:
    header, row = path.read_text().strip().split("\n")
    columns = header.split(",")
    cells = row.split(",")
    start = dt.date.fromisoformat(columns[2])
    return cells[0], cells[1], start, [int(c) for c in cells[2:]]


@pytest.fixture(scope="session")
def franklin_series():
    return read_fixture_series(FIXTURES / "franklin_synth.csv")


@pytest.fixture(scope="session")
def three_peak_snapshot(tmp_path_factory):
    _, _, start, cumulative = read_fixture_series(FIXTURES / "three_peak.csv")
    root = write_single_region_snapshot(
        tmp_path_factory.mktemp("three_peak"), "X", start, cumulative, population=500_000
    )
    return load_snapshot(root, snapshot_time=SNAPSHOT_TIME)


# Profiles/activities reused across equivalence corpora.
BASELINE_30 = PersonProfile(30, "male", False, "No Vaccine", "No Mask")
N95_PFIZER2 = PersonProfile(30, "male", False, "Pfizer (Dose 2)", "N95 respirator")
OLDER_CHRONIC = PersonProfile(70, "female", True, "Moderna (Dose 2)", "Surgical mask with ties")
CHILD_JJ = PersonProfile(10, "male", False, "J&J (Dose 1)", "Procedure mask with ear loops")

ACTIVITY_DEFAULT = ActivityProfile(n_indoor=5, n_outdoor=10)
ACTIVITY_NONE = ActivityProfile(n_indoor=0, n_outdoor=0)
ACTIVITY_CROWD = ActivityProfile(n_indoor=30, n_outdoor=50)

EQUIVALENCE_CORPUS = [
    ("x/", dt.date(2021, 6, 20), BASELINE_30, ACTIVITY_DEFAULT),
    ("x/", dt.date(2021, 6, 20), N95_PFIZER2, ACTIVITY_DEFAULT),
    ("x/", dt.date(2021, 7, 10), OLDER_CHRONIC, ACTIVITY_CROWD),
    ("x/", dt.date(2021, 7, 10), CHILD_JJ, ACTIVITY_DEFAULT),
    ("x/", dt.date(2021, 7, 25), BASELINE_30, ACTIVITY_NONE),
    ("x/", dt.date(2021, 7, 25), N95_PFIZER2, ACTIVITY_CROWD),
    ("y/b", dt.date(2021, 7, 1), BASELINE_30, ACTIVITY_DEFAULT),
    ("y/b", dt.date(2021, 7, 1), OLDER_CHRONIC, ACTIVITY_DEFAULT),
    ("y/b", dt.date(2021, 7, 5), CHILD_JJ, ACTIVITY_CROWD),
]


# ---------------------------------------------------------------------------
# Acceptance reporting: one pass/fail line per criterion in the summary.

_acceptance_results: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "test_acceptance" not in str(item.fspath):
        return
    label = item.name.removeprefix("test_")
    _acceptance_results[label] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict in sorted(_acceptance_results.items()):
        terminalreporter.write_line(f"{verdict}  {label}")
