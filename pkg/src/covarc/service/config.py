"""Service configuration: TOML file plus environment overrides.

Example config file:

    listen = "127.0.0.1:8000"
    snapshot_dir = "/var/lib/covarc/snapshot"
    reload_seconds = 3600
    reload_token = "change-me"
    allowed_origins = ["https://risk.example.org"]
    static_dir = "frontend/dist"

    [risk]
    k_indoor = 1.0
    k_outdoor = 0.05
    variant_smoothing_sigma_days = 7.0
    variant_lag_days = 30

Environment variables COVARC_SNAPSHOT_DIR, COVARC_LISTEN,
COVARC_RELOAD_SECS, and COVARC_RELOAD_TOKEN override the file.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from ..errors import CovarcError
from ..riskmodel import RiskConfig


class ConfigError(CovarcError):
    pass


@dataclass(frozen=True)
class ServiceConfig:
    snapshot_dir: Path
    listen: str = "127.0.0.1:8000"
    reload_seconds: int = 0
    allowed_origins: tuple[str, ...] = ()
    reload_token: str | None = None
    static_dir: Path | None = None
    allow_mdy_dates: bool = False
    risk: RiskConfig = field(default_factory=RiskConfig)

    def __post_init__(self):
        if self.reload_seconds < 0:
            raise ConfigError("reload_seconds must be >= 0")
        if not self.snapshot_dir.is_dir():
            raise ConfigError(f"snapshot directory does not exist: {self.snapshot_dir}")

    @property
    def host(self) -> str:
        return self.listen.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        try:
            return int(self.listen.rsplit(":", 1)[1])
        except (IndexError, ValueError):
            raise ConfigError(f"listen address must be host:port, got {self.listen!r}") from None


def load_service_config(path: str | Path | None = None, env: dict | None = None) -> ServiceConfig:
    env = os.environ if env is None else env
    raw: dict = {}
    if path is not None:
        try:
            raw = tomllib.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None

    snapshot_dir = env.get("COVARC_SNAPSHOT_DIR") or raw.get("snapshot_dir")
    if not snapshot_dir:
        raise ConfigError("snapshot_dir is required (config file or COVARC_SNAPSHOT_DIR)")
    listen = env.get("COVARC_LISTEN") or raw.get("listen", "127.0.0.1:8000")
    reload_raw = env.get("COVARC_RELOAD_SECS") or raw.get("reload_seconds", 0)
    try:
        reload_seconds = int(reload_raw)
    except (TypeError, ValueError):
        raise ConfigError(f"reload seconds must be an integer, got {reload_raw!r}") from None
    reload_token = env.get("COVARC_RELOAD_TOKEN") or raw.get("reload_token")

    risk_raw = raw.get("risk", {})
    if not isinstance(risk_raw, dict):
        raise ConfigError("[risk] must be a table")
    try:
        risk = RiskConfig(**risk_raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [risk] settings: {exc}") from None

    static_dir = raw.get("static_dir")
    return ServiceConfig(
        snapshot_dir=Path(snapshot_dir),
        listen=str(listen),
        reload_seconds=reload_seconds,
        allowed_origins=tuple(raw.get("allowed_origins", ())),
        reload_token=reload_token,
        static_dir=Path(static_dir) if static_dir else None,
        allow_mdy_dates=bool(raw.get("allow_mdy_dates", False)),
        risk=risk,
    )
