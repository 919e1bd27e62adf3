"""Skin-space exploration engine on a simulated arm.

The heavy lifting happens in the compiled extension; this wrapper only
normalizes config arguments, which may be a JSON string, a dict, or a path
to a config file.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from ._core import (  # noqa: F401
    BootstrapError,
    ConfigError,
    Engine as _Engine,
    ModelError,
    OptimizerError,
    ProjectionError,
    SampleDatabase,
    __version__,
)
from . import _core

__all__ = [
    "BootstrapError",
    "ConfigError",
    "Engine",
    "ModelError",
    "OptimizerError",
    "ProjectionError",
    "SampleDatabase",
    "__version__",
    "run_experiment",
    "validate_config",
]


def _config_text(config: Any) -> str:
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, Path):
        return config.read_text()
    if isinstance(config, str):
        stripped = config.lstrip()
        if stripped.startswith("{") or stripped.startswith("//"):
            return config
        return Path(config).read_text()
    raise TypeError(f"config must be a dict, JSON string or path, not {type(config)!r}")


def validate_config(config: Any) -> dict:
    """Parse a config and return its effective key fields (including the hash)."""
    return _core.validate_config(_config_text(config))


def run_experiment(
    config: Any,
    out_dir: str | os.PathLike | None = None,
    parallel: int = 1,
    seed: int | None = None,
    trials: int | None = None,
) -> dict:
    """Run all trials of a config and return the summary.

    When ``out_dir`` is given the full result directory (CSV tables and SVG
    plots) is written there.
    """
    out = None if out_dir is None else os.fspath(out_dir)
    return _core.run_experiment(
        _config_text(config), out_dir=out, parallel=parallel, seed=seed, trials=trials
    )


class Engine(_Engine):
    """Simulated environment built from a config (dict, JSON string or path)."""

    def __init__(self, config: Any):
        super().__init__(_config_text(config))
