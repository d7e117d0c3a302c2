"""Run configuration: defaults, an optional JSON file named by SSET_CONFIG, then flag overrides."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path

ENV_VAR = "SSET_CONFIG"
FLAVORS = ("kq", "joyal")
FORMATS = ("json", "text")

_FILE_KEYS = {
    "degreeCap": "degree_cap",
    "towerBound": "tower_bound",
    "searchBudget": "search_budget",
    "flavor": "flavor",
    "outputFormat": "output_format",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    degree_cap: int = 4
    tower_bound: int = 4
    search_budget: int = 10**7
    flavor: str = "kq"
    output_format: str = "json"

    def validate(self) -> "Config":
        for key in ("degree_cap", "tower_bound", "search_budget"):
            val = getattr(self, key)
            if not isinstance(val, int) or isinstance(val, bool) or val <= 0:
                raise ConfigError(f"{key} must be a positive integer, got {val!r}")
        if self.flavor not in FLAVORS:
            raise ConfigError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"outputFormat must be one of {FORMATS}, got {self.output_format!r}")
        return self

    def as_dict(self) -> dict:
        inv = {v: k for k, v in _FILE_KEYS.items()}
        return {inv[k]: v for k, v in asdict(self).items()}


def load_config(path: str | Path | None = None, **overrides) -> Config:
    """Defaults, then the file at ``path`` (or $SSET_CONFIG), then non-None ``overrides``."""
    cfg = Config()
    path = path or os.environ.get(ENV_VAR)
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path}, line {e.lineno} column {e.colno}: {e.msg}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        unknown = sorted(set(data) - set(_FILE_KEYS))
        if unknown:
            raise ConfigError(f"unknown config keys {unknown}")
        cfg = replace(cfg, **{_FILE_KEYS[k]: v for k, v in data.items()})
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()
