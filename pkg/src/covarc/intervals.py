"""Closed-interval arithmetic for non-negative risk quantities.

Every probability or fold factor in the engine is carried as a closed
range [lo, hi]. Because all factors in the model are non-negative, the
product of two intervals is taken endpoint-wise (lo*lo, hi*hi), which is
exact for that sign regime and keeps lo <= hi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"interval lower bound exceeds upper: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        # Valid only for non-negative operands; all engine quantities qualify.
        if self.lo < 0 or other.lo < 0:
            raise ValueError("endpoint-wise product requires non-negative intervals")
        return Interval(self.lo * other.lo, self.hi * other.hi)

    def scaled(self, k: float) -> "Interval":
        if k < 0:
            raise ValueError("scale factor must be non-negative")
        return Interval(k * self.lo, k * self.hi)

    def clamped(self, lo: float = 0.0, hi: float = 1.0) -> "Interval":
        return Interval(min(max(self.lo, lo), hi), min(max(self.hi, lo), hi))

    def complement(self) -> "Interval":
        """1 - x with endpoints swapped, e.g. an efficacy into a risk multiplier."""
        return Interval(1.0 - self.hi, 1.0 - self.lo)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


def weighted_sum(pairs: Iterable[tuple[float, Interval]]) -> Interval:
    """Endpoint-wise sum of weight*interval terms; weights must be >= 0."""
    lo = 0.0
    hi = 0.0
    for weight, iv in pairs:
        if weight < 0:
            raise ValueError("mixture weights must be non-negative")
        lo += weight * iv.lo
        hi += weight * iv.hi
    return Interval(lo, hi)
