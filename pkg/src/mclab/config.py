"""Run configuration: tolerances, sample plans, solver knobs, output paths.

Resolution order: built-in defaults, then a JSON config file, then MCLAB_*
environment variables, then explicit command-line flags.  The seed is
mandatory in the sense that every run has one and every report embeds the
fully resolved configuration.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace

from .errors import ConfigError

ENV_PREFIX = "MCLAB_"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 20240601
    tol: float = 1e-9
    diam_tol: float = 1e-6
    grid_resolution: int = 9
    sample_count: int = 1000
    coord_denominator: int = 16
    t_denominator: int = 16
    convention: str = "fromy"
    exact: bool | None = None  # None: use each space's own mode
    fp_orbit_n: int = 256
    fp_window: int = 32
    fp_tol: float = 1e-6
    fp_budget: int = 20_000
    fp_rmax: float = 1e6
    out_dir: str = "reports"

    def resolved(self) -> dict:
        out = asdict(self)
        # the output directory is environment, not run semantics; keeping it
        # out of the embedded config makes report bytes location-independent
        out.pop("out_dir")
        return out


_INT_KEYS = {
    "seed",
    "grid_resolution",
    "sample_count",
    "coord_denominator",
    "t_denominator",
    "fp_orbit_n",
    "fp_window",
    "fp_budget",
}
_FLOAT_KEYS = {"tol", "diam_tol", "fp_tol", "fp_rmax"}
_STR_KEYS = {"convention", "out_dir"}


def _coerce(key: str, value):
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _STR_KEYS:
            return str(value)
        if key == "exact":
            if isinstance(value, bool) or value is None:
                return value
            return str(value).lower() in ("1", "true", "yes", "exact")
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    raise ConfigError(f"unknown config key {key!r}")


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    cfg = RunConfig()
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        cfg = replace(cfg, **{k: _coerce(k, v) for k, v in data.items()})
    env = {}
    for f in fields(RunConfig):
        raw = os.environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            env[f.name] = _coerce(f.name, raw)
    if env:
        cfg = replace(cfg, **env)
    if overrides:
        cfg = replace(
            cfg, **{k: _coerce(k, v) for k, v in overrides.items() if v is not None}
        )
    return cfg
