"""Configuration modules."""

from .log import LOG_FORMAT, configure_logging
from .settings import SEED_ENV_VAR, Settings

__all__ = ["LOG_FORMAT", "SEED_ENV_VAR", "Settings", "configure_logging"]
