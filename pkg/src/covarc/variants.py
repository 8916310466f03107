"""Variant prevalence: smoothing, lagged sampling, and share normalization.

Raw per-variant series (proportions or sequence counts, either works) are
Gaussian-smoothed per variant, sampled at a lagged date to absorb reporting
delay, then normalized into a mix whose shares sum to exactly 1. Residual
mass (when raw values are proportions summing below 1) is attributed to the
original strain; raw totals above 1 (counts) are scaled proportionally.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Sequence

import numpy as np

if TYPE_CHECKING:
    from .ingest import DataSnapshot

VARIANT_NAMES = ("original", "alpha", "beta", "gamma", "delta", "omicron")

DEFAULT_SMOOTHING_SIGMA_DAYS = 7.0
DEFAULT_LAG_DAYS = 30

SHARE_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class VariantMix:
    """Normalized prevalence shares at a (lagged) reference date."""

    shares: Mapping[str, float]
    reference_date: dt.date
    lag_fallback: bool = False

    def __post_init__(self):
        if set(self.shares) != set(VARIANT_NAMES):
            raise ValueError(f"mix must cover exactly {VARIANT_NAMES}")
        total = sum(self.shares.values())
        if abs(total - 1.0) > SHARE_SUM_TOLERANCE:
            raise ValueError(f"shares sum to {total}, expected 1")
        for name, share in self.shares.items():
            if not (0.0 <= share <= 1.0):
                raise ValueError(f"share out of range for {name}: {share}")

    @classmethod
    def from_raw(
        cls,
        raw: Mapping[str, float],
        reference_date: dt.date,
        lag_fallback: bool = False,
    ) -> "VariantMix":
        return cls(normalize_shares(raw), reference_date, lag_fallback)


def normalize_shares(raw: Mapping[str, float]) -> dict[str, float]:
    """Turn raw per-variant values into shares summing to exactly 1.

    Raw totals below 1 are treated as proportions: the missing mass goes to
    ``original``. Totals above 1 are treated as counts and scaled down
    proportionally. An all-zero input collapses to the original strain.
    """
    values = {name: max(0.0, float(raw.get(name, 0.0))) for name in VARIANT_NAMES}
    total = sum(values.values())
    if total == 0.0:
        return {name: (1.0 if name == "original" else 0.0) for name in VARIANT_NAMES}
    values["original"] += max(0.0, 1.0 - total)
    denom = sum(values.values())
    return {name: value / denom for name, value in values.items()}


def gaussian_smooth(values: Sequence[float], sigma_days: float) -> list[float]:
    """Smooth a daily series with a truncated, renormalized Gaussian kernel.

    The kernel is cut at +/- ceil(3 sigma) days and renormalized over the
    weights that actually fall inside the series, so boundaries are handled
    without padding and a constant series passes through unchanged (exactly:
    the accumulation runs over deviations from the center sample).
    """
    n = len(values)
    if n == 0:
        raise ValueError("cannot smooth an empty series")
    if sigma_days <= 0:
        raise ValueError("sigma_days must be positive")

    x = np.asarray(values, dtype=float)
    radius = math.ceil(3.0 * sigma_days)
    deviation = np.zeros(n)
    weight_sum = np.full(n, 1.0)  # offset-0 weight is exp(0) = 1
    inv_two_sigma_sq = 1.0 / (2.0 * sigma_days * sigma_days)
    for offset in range(1, radius + 1):
        w = math.exp(-(offset * offset) * inv_two_sigma_sq)
        if offset < n:
            # neighbor at i+offset exists for i < n-offset
            deviation[: n - offset] += w * (x[offset:] - x[: n - offset])
            weight_sum[: n - offset] += w
            # neighbor at i-offset exists for i >= offset
            deviation[offset:] += w * (x[: n - offset] - x[offset:])
            weight_sum[offset:] += w
    return (x + deviation / weight_sum).tolist()


def smoothed_variant_series(
    snapshot: "DataSnapshot", region: str, sigma_days: float
) -> dict[str, np.ndarray] | None:
    """Per-variant smoothed series for a region, memoized on the snapshot.

    Returns None when the region has no variant data. Cache population is
    idempotent, so concurrent readers are safe.
    """
    series = snapshot.variants.get(region)
    if series is None:
        return None
    key = ("smoothed-variants", region, sigma_days)
    cached = snapshot.cache.get(key)
    if cached is None:
        cached = {
            name: np.asarray(gaussian_smooth(series.shares[name], sigma_days))
            for name in VARIANT_NAMES
        }
        snapshot.cache[key] = cached
    return cached


def lagged_raw_shares(
    snapshot: "DataSnapshot",
    region: str,
    on: dt.date,
    *,
    sigma_days: float = DEFAULT_SMOOTHING_SIGMA_DAYS,
    lag_days: int = DEFAULT_LAG_DAYS,
) -> tuple[dict[str, float], bool]:
    """Smoothed per-variant values at ``on - lag_days``.

    Total by construction: a missing region, or a lagged date outside the
    available series, yields all zeros plus a fallback flag instead of an
    error.
    """
    zeros = {name: 0.0 for name in VARIANT_NAMES}
    smoothed = smoothed_variant_series(snapshot, region, sigma_days)
    if smoothed is None:
        return zeros, True
    target = on - dt.timedelta(days=lag_days)
    index = (target - snapshot.variants[region].start_date).days
    length = len(next(iter(smoothed.values())))
    if index < 0 or index >= length:
        return zeros, True
    return {name: max(0.0, float(smoothed[name][index])) for name in VARIANT_NAMES}, False


def variant_mix(
    snapshot: "DataSnapshot",
    region: str,
    on: dt.date,
    *,
    sigma_days: float = DEFAULT_SMOOTHING_SIGMA_DAYS,
    lag_days: int = DEFAULT_LAG_DAYS,
) -> VariantMix:
    raw, fallback = lagged_raw_shares(
        snapshot, region, on, sigma_days=sigma_days, lag_days=lag_days
    )
    reference = on - dt.timedelta(days=lag_days)
    return VariantMix.from_raw(raw, reference, lag_fallback=fallback)
