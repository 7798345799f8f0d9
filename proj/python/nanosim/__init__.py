"""Python front end for the nanosim simulator."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import _nanosim
from ._nanosim import ConfigError, SimError, nic_packet_rate, parse_load_grid, percentile

__all__ = [
    "ConfigError",
    "SimError",
    "Run",
    "list_presets",
    "preset_config",
    "resolve",
    "run",
    "nic_packet_rate",
    "parse_load_grid",
    "percentile",
]


def _encode(config) -> str:
    if config is None:
        return ""
    return json.dumps(config)


def _assignments(overrides) -> list[str]:
    if overrides is None:
        return []
    if isinstance(overrides, Mapping):
        return [f"{k}={json.dumps(v)}" for k, v in overrides.items()]
    return list(overrides)


def list_presets() -> list[str]:
    return [name for name, _, _ in _nanosim.presets()]


def preset_config(name: str) -> dict:
    return json.loads(_nanosim.preset_config(name))


def resolve(config, overrides=None, seed: int | None = None) -> dict:
    """Resolved document for a preset name, a file path, or a dict."""
    return json.loads(_nanosim.resolve(_encode(config), _assignments(overrides), seed))


@dataclass
class Run:
    files: dict[str, str]
    incomplete: bool

    def table(self, name: str) -> list[dict[str, str]]:
        return list(csv.DictReader(io.StringIO(self.files[name])))

    def metrics(self) -> dict[str, float]:
        return {r["metric"]: float(r["value"]) for r in self.table("metrics.csv")}


def run(config, overrides: Iterable[str] | Mapping | None = None, seed: int | None = None) -> Run:
    files, incomplete = _nanosim.run(_encode(config), _assignments(overrides), seed)
    return Run(dict(files), bool(incomplete))
