"""Configuration management for the miner."""

import copy
import os
from pathlib import Path
from typing import Any, Optional

import yaml

SEED_ENV_VAR = "GFPM_SEED"


class Settings:
    """Manages miner settings from YAML config file."""

    DEFAULT_CONFIG = {
        "mining": {
            "class_token": "1",
            "min_support": 0.01,
            "min_confidence": 0.5,
            "engine": "fp",
        },
        "output": {
            "format": "csv",
            "digits": 6,
        },
        "oracle": {
            "max_items": 20,
        },
        "bench": {
            "scenario": "imbalanced",
            "n_transactions": 25000,
            "n_items": 60,
            "min_confidence": 0.0,
            "repetitions": 20,
            "jobs": 1,
            "seed": 0,
        },
        "logging": {
            "level": "INFO",
        },
    }

    def __init__(self, config_path: Optional[str] = None):
        """Initialize settings.

        Args:
            config_path: Path to config file. If None, uses default locations.
        """
        self._config: dict = {}
        self._config_path: Optional[Path] = None

        if config_path:
            self._config_path = Path(config_path)
        else:
            locations = [
                Path.home() / ".config" / "gfp-miner" / "config.yaml",
                Path(__file__).parent.parent.parent / "config.yaml",
            ]
            for loc in locations:
                if loc.exists():
                    self._config_path = loc
                    break

        self._load_config()

    @property
    def path(self) -> Optional[Path]:
        return self._config_path

    def _load_config(self) -> None:
        """Load configuration from file or use defaults.

        Raises:
            FileNotFoundError: If an explicit config path does not exist
            ValueError: If the file is not a YAML mapping
        """
        self._config = copy.deepcopy(self.DEFAULT_CONFIG)

        if self._config_path is None:
            return
        with open(self._config_path, "r", encoding="utf-8") as f:
            file_config = yaml.safe_load(f) or {}
        if not isinstance(file_config, dict):
            raise ValueError(f"{self._config_path}: top level must be a mapping")
        self._merge_config(self._config, file_config)

    def _merge_config(self, base: dict, override: dict) -> None:
        """Recursively merge override into base config."""
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._merge_config(base[key], value)
            else:
                base[key] = value

    def get(self, key: str, default: Any = None) -> Any:
        """Get a config value using dot notation.

        Args:
            key: Config key in dot notation (e.g., 'mining.min_support')
            default: Default value if key not found

        Returns:
            Config value or default
        """
        keys = key.split(".")
        value = self._config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """Set a config value using dot notation."""
        keys = key.split(".")
        config = self._config

        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def _fraction(self, key: str, low_open: bool = False) -> float:
        value = float(self.get(key))
        low_ok = value > 0 if low_open else value >= 0
        if not (low_ok and value <= 1):
            bracket = "(" if low_open else "["
            raise ValueError(f"{key} must be in {bracket}0, 1], got {value}")
        return value

    def _positive_int(self, key: str) -> int:
        value = int(self.get(key))
        if value < 1:
            raise ValueError(f"{key} must be >= 1, got {value}")
        return value

    @property
    def class_token(self) -> str:
        return str(self.get("mining.class_token", "1"))

    @property
    def min_support(self) -> float:
        return self._fraction("mining.min_support", low_open=True)

    @property
    def min_confidence(self) -> float:
        return self._fraction("mining.min_confidence")

    @property
    def engine(self) -> str:
        engine = self.get("mining.engine", "fp")
        if engine not in ("fp", "bruteforce"):
            raise ValueError(f"mining.engine must be fp or bruteforce, got {engine!r}")
        return engine

    @property
    def output_format(self) -> str:
        fmt = self.get("output.format", "csv")
        if fmt not in ("csv", "jsonl"):
            raise ValueError(f"output.format must be csv or jsonl, got {fmt!r}")
        return fmt

    @property
    def digits(self) -> int:
        return self._positive_int("output.digits")

    @property
    def oracle_max_items(self) -> int:
        return self._positive_int("oracle.max_items")

    @property
    def bench_scenario(self) -> str:
        return self.get("bench.scenario", "imbalanced")

    @property
    def bench_transactions(self) -> int:
        return self._positive_int("bench.n_transactions")

    @property
    def bench_items(self) -> int:
        return self._positive_int("bench.n_items")

    @property
    def bench_min_confidence(self) -> float:
        return self._fraction("bench.min_confidence")

    @property
    def bench_repetitions(self) -> int:
        return self._positive_int("bench.repetitions")

    @property
    def bench_jobs(self) -> int:
        return self._positive_int("bench.jobs")

    @property
    def bench_seed(self) -> int:
        """Default generator seed; the GFPM_SEED environment variable wins."""
        raw = os.environ.get(SEED_ENV_VAR)
        if raw is not None and raw.strip():
            try:
                return int(raw)
            except ValueError:
                raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}")
        return int(self.get("bench.seed", 0))

    @property
    def log_level(self) -> str:
        return str(self.get("logging.level", "INFO")).upper()
