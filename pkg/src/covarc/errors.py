"""Exception types shared across the engine.

Everything raised on purpose derives from CovarcError so callers (CLI,
service) can separate expected failures from bugs.
"""

from __future__ import annotations

import datetime as dt


class CovarcError(Exception):
    """Base class for all expected engine errors."""


class IngestError(CovarcError):
    """Snapshot input is malformed or inconsistent.

    ``source`` names the offending file (or logical input) so messages
    point at something actionable.
    """

    def __init__(self, message: str, *, source: str | None = None):
        self.source = source
        super().__init__(f"{source}: {message}" if source else message)


class UnknownRegionError(CovarcError):
    def __init__(self, region: str):
        self.region = region
        super().__init__(f"region not found: {region!r}")


class UnknownNameError(CovarcError):
    """A mask or vaccine name does not resolve in its table."""

    def __init__(self, kind: str, name: str, allowed: list[str]):
        self.kind = kind
        self.name = name
        self.allowed = list(allowed)
        super().__init__(
            f"unknown {kind} {name!r}; valid names: {', '.join(self.allowed)}"
        )


class InsufficientDataError(CovarcError):
    """Not enough case history to evaluate the requested date.

    Carries the date range a usable series would have to cover.
    """

    def __init__(self, message: str, *, required_from: dt.date, required_to: dt.date):
        self.required_from = required_from
        self.required_to = required_to
        super().__init__(message)
