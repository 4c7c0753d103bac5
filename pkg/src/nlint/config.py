"""Run configuration: JSON file over defaults, environment seed override.

A run configuration is a JSON object with lower_snake_case keys grouped
by section (sensor, plume, sigma_mir, sigma_swir, fringe, sweep,
monte_carlo).  Values given in the file override the defaults below;
command-line flags override the file; the NLINT_SEED environment
variable overrides every configured random seed.  Validation failures
raise ConfigError carrying a dotted JSON path to the offending field.
"""

from __future__ import annotations

import copy
import json
import os
from dataclasses import dataclass

from .errors import ConfigError
from .fringe import FringeScanConfig
from .physics import PlumeState, SensorConfig
from .spectra import CrossSectionPair
from .sweep import GainGrid, MonteCarloSpec, SweepSpec

SEED_ENV_VAR = "NLINT_SEED"

DEFAULT_CONFIG: dict = {
    "sensor": {
        "eta": 0.1,            # signal detector quantum efficiency
        "gain": 1.0e-8,        # single-pass parametric gain
        "alpha": 1.0e-8,       # scene return fraction
        "t_int": 1.0,          # s
        "p_idler": 0.02,       # W
        "lambda_signal": 1.589,  # um
        "lambda_idler": 3.221,   # um
    },
    "plume": {
        "depth": 1.0,           # m
        "mixing_ratio": 0.0,    # dimensionless
        "n_air": 2.53e25,       # m-3
    },
    "sigma_mir": {
        "sigma_on": 1.18e-22,   # m2/molecule
        "sigma_off": 0.0,
        "lambda_on": 3.221,     # um
        "lambda_off": 3.392,
    },
    "sigma_swir": {
        "sigma_on": 1.81e-24,
        "sigma_off": 0.0,
        "lambda_on": 1.65,
        "lambda_off": 1.66,
    },
    "fringe": {
        "scan_length": 9.663,   # um, three fringe periods at the idler default
        "steps": 100,
        "counts_scale": 1000.0,
        "phase_offset": 0.0,    # rad
        "rng_seed": 20230816,
    },
    "sweep": {
        "gain_grid": {"minimum": 1.0e-8, "maximum": 1.0e-2, "points_per_decade": 10},
        "alpha_values": [1.0e-8, 1.0e-6, 1.0e-4, 1.0e-2, 1.0],
    },
    "monte_carlo": {
        "trials": 1000,
        "rng_seed": 20230816,
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Fully validated configuration for the command-line tools."""

    sensor: SensorConfig
    plume: PlumeState
    sigma_mir: CrossSectionPair
    sigma_swir: CrossSectionPair
    fringe: FringeScanConfig
    sweep: SweepSpec
    monte_carlo: MonteCarloSpec


def _merge(base: dict, override: dict, path: str) -> None:
    for key, value in override.items():
        where = f"{path}{key}"
        if key not in base:
            raise ConfigError(f"{where}: unknown field")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{where}: expected an object")
            _merge(base[key], value, f"{where}.")
        else:
            base[key] = value


def _number(data: dict, section: str, key: str) -> float:
    value = data[section][key] if "." not in key else _dig(data[section], key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key}: expected a number, got {value!r}")
    return float(value)


def _integer(data: dict, section: str, key: str) -> int:
    value = data[section][key] if "." not in key else _dig(data[section], key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{section}.{key}: expected an integer, got {value!r}")
    return value


def _dig(mapping: dict, dotted: str):
    for part in dotted.split("."):
        mapping = mapping[part]
    return mapping


def _number_list(data: dict, section: str, key: str) -> tuple[float, ...]:
    value = data[section][key]
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(f"{section}.{key}: expected a non-empty array of numbers")
    out = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{section}.{key}[{i}]: expected a number, got {item!r}")
        out.append(float(item))
    return tuple(out)


def _build(section: str, factory, **kwargs):
    try:
        return factory(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"{section}: {exc}") from exc


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Load, merge, and validate a run configuration.

    path names an optional JSON file; overrides maps dotted field paths
    (for example "sensor.alpha") to values supplied by command-line
    flags.  Precedence: flags, then NLINT_SEED for the seeds, then the
    file, then defaults.
    """
    data = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                loaded = json.load(fh)
            except json.JSONDecodeError as exc:
                # keep the type so callers can tell syntax from validation
                raise json.JSONDecodeError(f"{path}: {exc.msg}", exc.doc, exc.pos) from None
        if not isinstance(loaded, dict):
            raise ConfigError(f"{path}: top level must be a JSON object")
        _merge(data, loaded, "")

    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR}: expected an integer, got {env_seed!r}") from None
        data["fringe"]["rng_seed"] = seed
        data["monte_carlo"]["rng_seed"] = seed

    for dotted, value in (overrides or {}).items():
        section, _, rest = dotted.partition(".")
        try:
            parent = data[section]
            parts = rest.split(".")
            for part in parts[:-1]:
                parent = parent[part]
            if parts[-1] not in parent:
                raise KeyError(parts[-1])
            parent[parts[-1]] = value
        except (KeyError, TypeError):
            raise ConfigError(f"{dotted}: unknown field") from None

    sensor = _build(
        "sensor",
        SensorConfig,
        eta=_number(data, "sensor", "eta"),
        gain=_number(data, "sensor", "gain"),
        alpha=_number(data, "sensor", "alpha"),
        t_int=_number(data, "sensor", "t_int"),
        p_idler=_number(data, "sensor", "p_idler"),
        lambda_signal=_number(data, "sensor", "lambda_signal"),
        lambda_idler=_number(data, "sensor", "lambda_idler"),
    )
    plume = _build(
        "plume",
        PlumeState,
        depth=_number(data, "plume", "depth"),
        mixing_ratio=_number(data, "plume", "mixing_ratio"),
        n_air=_number(data, "plume", "n_air"),
    )
    pairs = {}
    for section in ("sigma_mir", "sigma_swir"):
        pairs[section] = _build(
            section,
            CrossSectionPair,
            sigma_on=_number(data, section, "sigma_on"),
            sigma_off=_number(data, section, "sigma_off"),
            lambda_on=_number(data, section, "lambda_on"),
            lambda_off=_number(data, section, "lambda_off"),
        )
    fringe_cfg = _build(
        "fringe",
        FringeScanConfig,
        sensor=sensor,
        lambda_idler=sensor.lambda_idler,
        scan_length=_number(data, "fringe", "scan_length"),
        steps=_integer(data, "fringe", "steps"),
        counts_scale=_number(data, "fringe", "counts_scale"),
        phase_offset=_number(data, "fringe", "phase_offset"),
        rng_seed=_integer(data, "fringe", "rng_seed"),
    )
    grid = _build(
        "sweep.gain_grid",
        GainGrid,
        minimum=_number(data, "sweep", "gain_grid.minimum"),
        maximum=_number(data, "sweep", "gain_grid.maximum"),
        points_per_decade=_integer(data, "sweep", "gain_grid.points_per_decade"),
    )
    sweep_spec = _build(
        "sweep",
        SweepSpec,
        gain_grid=grid,
        alpha_values=_number_list(data, "sweep", "alpha_values"),
        base_sensor=sensor,
        plume_depth=plume.depth,
        n_air=plume.n_air,
        sigma_mir=pairs["sigma_mir"],
        sigma_swir=pairs["sigma_swir"],
    )
    monte_carlo = _build(
        "monte_carlo",
        MonteCarloSpec,
        sensor=sensor,
        plume=plume,
        sigma_mir=pairs["sigma_mir"],
        trials=_integer(data, "monte_carlo", "trials"),
        rng_seed=_integer(data, "monte_carlo", "rng_seed"),
    )
    return RunConfig(
        sensor=sensor,
        plume=plume,
        sigma_mir=pairs["sigma_mir"],
        sigma_swir=pairs["sigma_swir"],
        fringe=fringe_cfg,
        sweep=sweep_spec,
        monte_carlo=monte_carlo,
    )
