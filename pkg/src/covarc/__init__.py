"""CovARC: interval-valued COVID-19 activity risk engine.

Load a snapshot directory, then ask for one-shot assessments or temporal
sweeps:

    import datetime as dt
    import covarc

    snapshot = covarc.load_snapshot("snapshot/")
    report = covarc.assess(
        snapshot,
        "united states/franklin ma",
        dt.date(2021, 9, 1),
        covarc.PersonProfile(30, "male", False, "No Vaccine", "No Mask"),
        covarc.ActivityProfile(n_indoor=5, n_outdoor=10),
    )
    print(report.infection, report.hospitalization, report.death)
"""

from .epidemiology import (
    active_window_sum,
    case_density_range,
    daily_new_cases,
    underreport_ratio,
)
from .errors import (
    CovarcError,
    IngestError,
    InsufficientDataError,
    UnknownNameError,
    UnknownRegionError,
)
from .ingest import (
    CaseSeries,
    DataSnapshot,
    RatioSeries,
    RegionKey,
    VariantShareSeries,
    build_snapshot,
    load_snapshot,
    serialize_snapshot,
    write_snapshot,
)
from .intervals import Interval
from .riskmodel import (
    ActivityProfile,
    PersonProfile,
    RiskConfig,
    RiskReport,
    SimulationDay,
    assess,
    simulate,
)
from .tables import MaskTable, SeverityTable, VaccineTable, load_default_tables
from .variants import VariantMix, gaussian_smooth, variant_mix

__version__ = "0.1.0"

__all__ = [
    "ActivityProfile",
    "CaseSeries",
    "CovarcError",
    "DataSnapshot",
    "IngestError",
    "InsufficientDataError",
    "Interval",
    "MaskTable",
    "PersonProfile",
    "RatioSeries",
    "RegionKey",
    "RiskConfig",
    "RiskReport",
    "SeverityTable",
    "SimulationDay",
    "UnknownNameError",
    "UnknownRegionError",
    "VaccineTable",
    "VariantMix",
    "VariantShareSeries",
    "active_window_sum",
    "assess",
    "build_snapshot",
    "case_density_range",
    "daily_new_cases",
    "gaussian_smooth",
    "load_default_tables",
    "load_snapshot",
    "serialize_snapshot",
    "simulate",
    "underreport_ratio",
    "variant_mix",
    "write_snapshot",
]
