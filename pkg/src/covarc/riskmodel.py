"""Interval risk composition for a person/activity/region/date.

The infection stage multiplies contact counts, per-capita active-case
density, the vaccine risk multiplier (1 - efficacy, endpoints swapped) and
the mask passthrough (1 - filtration efficacy), separately for indoor and
outdoor contacts, then sums the two into a cumulative infection range.
Hospitalization and death scale that range by an age-band base rate and
fold factors for variant mix, sex, and chronic illness. All probability
intervals are clamped into [0, 1] at the end of each stage.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, NamedTuple

from .epidemiology import case_density_range, underreport_ratio
from .errors import InsufficientDataError, UnknownRegionError
from .intervals import Interval, weighted_sum
from .tables import SeverityTable, VaccineTable
from .variants import (
    DEFAULT_LAG_DAYS,
    DEFAULT_SMOOTHING_SIGMA_DAYS,
    VARIANT_NAMES,
    VariantMix,
    variant_mix,
)

if TYPE_CHECKING:
    from .ingest import DataSnapshot
    from .tables import MaskTable

FLAG_NO_SURVEY_DATA = "no-survey-data"
FLAG_LAG_FALLBACK = "lag-fallback"
FLAG_UNKNOWN_EFFICACY = "unknown-efficacy"
FLAG_UNKNOWN_SEVERITY = "unknown-severity"

SEXES = ("male", "female")


@dataclass(frozen=True)
class PersonProfile:
    age_years: int
    sex: str
    chronic_illness: bool
    vaccine: str
    mask: str

    def __post_init__(self):
        if self.age_years < 0:
            raise ValueError("age_years must be >= 0")
        if self.sex not in SEXES:
            raise ValueError(f"sex must be one of {SEXES}")


@dataclass(frozen=True)
class ActivityProfile:
    n_indoor: int
    n_outdoor: int

    def __post_init__(self):
        if self.n_indoor < 0 or self.n_outdoor < 0:
            raise ValueError("contact counts must be >= 0")


@dataclass(frozen=True)
class RiskConfig:
    """Tunable model constants, echoed into every report.

    The indoor/outdoor multipliers have no published magnitude; the defaults
    put outdoor contact at a twentieth of indoor weight and are deliberately
    exposed rather than hidden.
    """

    k_indoor: float = 1.0
    k_outdoor: float = 0.05
    variant_smoothing_sigma_days: float = DEFAULT_SMOOTHING_SIGMA_DAYS
    variant_lag_days: int = DEFAULT_LAG_DAYS

    def __post_init__(self):
        if self.k_indoor <= 0 or self.k_outdoor <= 0:
            raise ValueError("environment multipliers must be positive")
        if self.k_outdoor > self.k_indoor:
            raise ValueError("k_outdoor must not exceed k_indoor")
        if self.variant_smoothing_sigma_days <= 0:
            raise ValueError("variant_smoothing_sigma_days must be positive")
        if self.variant_lag_days < 0:
            raise ValueError("variant_lag_days must be >= 0")

    def with_overrides(self, **overrides) -> "RiskConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class RiskReport:
    region: str
    date: dt.date
    infection: Interval
    hospitalization: Interval
    death: Interval
    profile: PersonProfile
    activity: ActivityProfile
    config: RiskConfig
    flags: tuple[str, ...]
    snapshot_time: dt.datetime


@dataclass(frozen=True)
class SimulationDay:
    date: dt.date
    report: RiskReport | None = None
    skip_reason: str | None = None


class EfficacyLookup(NamedTuple):
    value: Interval
    unknown_touched: bool


class SeverityFolds(NamedTuple):
    hospitalization: Interval
    death: Interval
    unknown_touched: bool


class InfectionRisk(NamedTuple):
    indoor: Interval
    outdoor: Interval
    cumulative: Interval


def mask_factor(table: "MaskTable", mask: str) -> float:
    """Exposure passthrough of a worn mask: 1 - fitted filtration efficacy."""
    return 1.0 - table.ffe_of(mask)


def vaccine_efficacy(table: VaccineTable, vaccine: str, mix: VariantMix) -> EfficacyLookup:
    """Mixture-weighted efficacy interval across the variant shares."""
    unknown_touched = False
    terms = []
    for variant in VARIANT_NAMES:
        share = mix.shares[variant]
        cell, unknown = table.cell(vaccine, variant)
        if unknown and share > 0.0:
            unknown_touched = True
        terms.append((share, cell))
    return EfficacyLookup(weighted_sum(terms), unknown_touched)


def vaccine_factor(efficacy: Interval) -> Interval:
    """Residual infection risk multiplier after vaccination."""
    return efficacy.complement()


def infection_risk(
    activity: ActivityProfile,
    density: Interval,
    vacc_factor: Interval,
    mask_passthrough: float,
    config: RiskConfig,
) -> InfectionRisk:
    """Indoor, outdoor, and cumulative infection ranges for one activity."""
    indoor_scale = activity.n_indoor * config.k_indoor
    outdoor_scale = activity.n_outdoor * config.k_outdoor
    indoor = Interval(
        indoor_scale * density.lo * vacc_factor.lo * mask_passthrough,
        indoor_scale * density.hi * vacc_factor.hi * mask_passthrough,
    )
    outdoor = Interval(
        outdoor_scale * density.lo * vacc_factor.lo * mask_passthrough,
        outdoor_scale * density.hi * vacc_factor.hi * mask_passthrough,
    )
    cumulative = Interval(min(indoor.lo + outdoor.lo, 1.0), min(indoor.hi + outdoor.hi, 1.0))
    return InfectionRisk(indoor, outdoor, cumulative)


def severity_folds(table: SeverityTable, profile: PersonProfile, mix: VariantMix) -> SeverityFolds:
    """Multiplicative severity factors: chronic x variant for hospitalization,
    sex x chronic x variant for death. Variant folds are mixture-weighted."""
    hosp_variant = weighted_sum(
        (mix.shares[v], table.hosp_variant_fold[v]) for v in VARIANT_NAMES
    )
    death_variant = weighted_sum(
        (mix.shares[v], table.death_variant_fold[v]) for v in VARIANT_NAMES
    )
    unknown_touched = any(
        mix.shares[v] > 0.0
        and (v in table.unknown_hosp_variants or v in table.unknown_death_variants)
        for v in VARIANT_NAMES
    )
    one = Interval(1.0, 1.0)
    chronic_hosp = table.chronic_hosp_fold if profile.chronic_illness else one
    chronic_death = table.chronic_death_fold if profile.chronic_illness else one
    sex_death = table.death_sex_fold[profile.sex]
    return SeverityFolds(
        hospitalization=chronic_hosp * hosp_variant,
        death=sex_death * chronic_death * death_variant,
        unknown_touched=unknown_touched,
    )


def hospitalization_risk(
    table: SeverityTable, profile: PersonProfile, mix: VariantMix, cumulative: Interval
) -> Interval:
    base = table.hosp_rate_by_age[table.age_band(profile.age_years)]
    fold = severity_folds(table, profile, mix).hospitalization
    return (cumulative.scaled(base) * fold).clamped()


def death_risk(
    table: SeverityTable, profile: PersonProfile, mix: VariantMix, cumulative: Interval
) -> Interval:
    base = table.death_rate_by_age[table.age_band(profile.age_years)]
    fold = severity_folds(table, profile, mix).death
    return (cumulative.scaled(base) * fold).clamped()


def assess(
    snapshot: "DataSnapshot",
    region: str,
    on: dt.date,
    profile: PersonProfile,
    activity: ActivityProfile,
    config: RiskConfig | None = None,
) -> RiskReport:
    """One-shot assessment: compose density, mix, factors, and severities."""
    if region not in snapshot.cases:
        raise UnknownRegionError(region)
    config = config or RiskConfig()

    ratio = underreport_ratio(snapshot, region, on)
    density = case_density_range(snapshot, region, on)
    mix = variant_mix(
        snapshot,
        region,
        on,
        sigma_days=config.variant_smoothing_sigma_days,
        lag_days=config.variant_lag_days,
    )
    efficacy = vaccine_efficacy(snapshot.vaccine_table, profile.vaccine, mix)
    vacc = vaccine_factor(efficacy.value)
    mask = mask_factor(snapshot.mask_table, profile.mask)
    infection = infection_risk(activity, density, vacc, mask, config)
    hospitalization = hospitalization_risk(snapshot.severity_table, profile, mix, infection.cumulative)
    death = death_risk(snapshot.severity_table, profile, mix, infection.cumulative)

    flags = set()
    if ratio.no_survey_data:
        flags.add(FLAG_NO_SURVEY_DATA)
    if mix.lag_fallback:
        flags.add(FLAG_LAG_FALLBACK)
    if efficacy.unknown_touched:
        flags.add(FLAG_UNKNOWN_EFFICACY)
    if severity_folds(snapshot.severity_table, profile, mix).unknown_touched:
        flags.add(FLAG_UNKNOWN_SEVERITY)

    return RiskReport(
        region=region,
        date=on,
        infection=infection.cumulative,
        hospitalization=hospitalization,
        death=death,
        profile=profile,
        activity=activity,
        config=config,
        flags=tuple(sorted(flags)),
        snapshot_time=snapshot.snapshot_time,
    )


def simulate(
    snapshot: "DataSnapshot",
    region: str,
    date_from: dt.date,
    date_to: dt.date,
    profile: PersonProfile,
    activity: ActivityProfile,
    config: RiskConfig | None = None,
) -> list[SimulationDay]:
    """Daily assessments over [date_from, date_to], in date order.

    Days that cannot be assessed (insufficient case history) are kept in the
    output with their reason rather than dropped.
    """
    if region not in snapshot.cases:
        raise UnknownRegionError(region)
    if date_from > date_to:
        raise ValueError(f"empty date range: {date_from} > {date_to}")
    config = config or RiskConfig()
    # Resolve names once so bad inputs fail fast instead of per day.
    snapshot.mask_table.ffe_of(profile.mask)
    snapshot.vaccine_table.cell(profile.vaccine, "original")

    out: list[SimulationDay] = []
    on = date_from
    while on <= date_to:
        try:
            out.append(SimulationDay(date=on, report=assess(snapshot, region, on, profile, activity, config)))
        except InsufficientDataError as exc:
            out.append(SimulationDay(date=on, skip_reason=str(exc)))
        on += dt.timedelta(days=1)
    return out
