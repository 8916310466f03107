from .app import SnapshotHolder, create_app
from .config import ConfigError, ServiceConfig, load_service_config

__all__ = [
    "ConfigError",
    "ServiceConfig",
    "SnapshotHolder",
    "create_app",
    "load_service_config",
]
