"""Request/response models for the HTTP API.

Interval endpoints are serialized as decimal strings at 17 significant
digits so clients can round-trip the exact float values.
"""

from __future__ import annotations

import datetime as dt
from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..riskmodel import ActivityProfile, PersonProfile, RiskConfig, RiskReport


def decimal17(x: float) -> str:
    return format(x, ".17g")


class ProfileIn(BaseModel):
    age_years: int = Field(ge=0)
    sex: Literal["male", "female"]
    chronic_illness: bool
    vaccine: str
    mask: str

    def to_domain(self) -> PersonProfile:
        return PersonProfile(
            age_years=self.age_years,
            sex=self.sex,
            chronic_illness=self.chronic_illness,
            vaccine=self.vaccine,
            mask=self.mask,
        )


class ActivityIn(BaseModel):
    n_indoor: int = Field(ge=0)
    n_outdoor: int = Field(ge=0)

    def to_domain(self) -> ActivityProfile:
        return ActivityProfile(n_indoor=self.n_indoor, n_outdoor=self.n_outdoor)


class ConfigOverridesIn(BaseModel):
    k_indoor: Optional[float] = Field(default=None, gt=0)
    k_outdoor: Optional[float] = Field(default=None, gt=0)
    variant_smoothing_sigma_days: Optional[float] = Field(default=None, gt=0)
    variant_lag_days: Optional[int] = Field(default=None, ge=0)


class RiskRequest(BaseModel):
    region: str
    date: dt.date
    profile: ProfileIn
    activity: ActivityIn
    config_overrides: Optional[ConfigOverridesIn] = None


class IntervalOut(BaseModel):
    lo: str
    hi: str

    @classmethod
    def from_interval(cls, iv) -> "IntervalOut":
        return cls(lo=decimal17(iv.lo), hi=decimal17(iv.hi))


class ConfigOut(BaseModel):
    k_indoor: float
    k_outdoor: float
    variant_smoothing_sigma_days: float
    variant_lag_days: int

    @classmethod
    def from_config(cls, config: RiskConfig) -> "ConfigOut":
        return cls(
            k_indoor=config.k_indoor,
            k_outdoor=config.k_outdoor,
            variant_smoothing_sigma_days=config.variant_smoothing_sigma_days,
            variant_lag_days=config.variant_lag_days,
        )


class RiskReportOut(BaseModel):
    region: str
    date: dt.date
    infection: IntervalOut
    hospitalization: IntervalOut
    death: IntervalOut
    flags: list[str]
    profile: ProfileIn
    activity: ActivityIn
    config: ConfigOut
    snapshot_time: dt.datetime

    @classmethod
    def from_report(cls, report: RiskReport) -> "RiskReportOut":
        return cls(
            region=report.region,
            date=report.date,
            infection=IntervalOut.from_interval(report.infection),
            hospitalization=IntervalOut.from_interval(report.hospitalization),
            death=IntervalOut.from_interval(report.death),
            flags=list(report.flags),
            profile=ProfileIn(
                age_years=report.profile.age_years,
                sex=report.profile.sex,
                chronic_illness=report.profile.chronic_illness,
                vaccine=report.profile.vaccine,
                mask=report.profile.mask,
            ),
            activity=ActivityIn(
                n_indoor=report.activity.n_indoor, n_outdoor=report.activity.n_outdoor
            ),
            config=ConfigOut.from_config(report.config),
            snapshot_time=report.snapshot_time,
        )


class RegionOut(BaseModel):
    canonical_id: str
    country: str
    region: Optional[str]
    population: int
    has_variants: bool
    has_ratios: bool


class HealthOut(BaseModel):
    status: str
    snapshot_time: Optional[dt.datetime]
    regions_loaded: int
