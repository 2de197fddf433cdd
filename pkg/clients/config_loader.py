"""
Run configuration: a strict JSON document mapped onto validated dataclasses.

Every key is optional; missing keys take the defaults in control.py. Unknown keys, wrong
types and out-of-range values raise ConfigError naming the key path, e.g. "cavity.x0_m[1]".
"""

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

import control
from billiard import Rectangle
from billiard.green import XiConvention
from errors import CavityScatterError, ConfigError
from registries.condition_registry import parse_condition
from registries.spacing_registry import parse_spacing_variable
from resonance import NewtonOptions
from spectral_stats import EnsembleSpec, k_from_freq


@dataclass(frozen=True)
class CavitySpec:
    """Single cavity used by the modes, xi, reflect and resonances subcommands."""

    c1_m: float = 0.3
    c2_m: float = 0.2
    x0_m: Tuple[float, float] = (0.1117, 0.0731)
    band_min_GHz: float = 0.0
    band_max_GHz: float = 6.0

    @property
    def rect(self) -> Rectangle:
        return Rectangle(self.c1_m, self.c2_m)

    @property
    def band_per_m(self) -> Tuple[float, float]:
        return k_from_freq(self.band_min_GHz), k_from_freq(self.band_max_GHz)


@dataclass(frozen=True)
class GridSpec:
    """Real wavenumber grid and decay rates for tabulations."""

    k_min_per_m: float = 1.0
    k_max_per_m: float = 200.0
    k_step_per_m: float = 0.5
    kappa_per_m: Tuple[float, ...] = (20.0, 50.0, 100.0)

    def k_values(self):
        count = int(math.floor((self.k_max_per_m - self.k_min_per_m) / self.k_step_per_m + 1e-9)) + 1
        return self.k_min_per_m + self.k_step_per_m * np.arange(count)


@dataclass(frozen=True)
class RunConfig:
    ensemble: EnsembleSpec = field(default_factory=EnsembleSpec)
    cavity: CavitySpec = field(default_factory=CavitySpec)
    grid: GridSpec = field(default_factory=GridSpec)

    def to_dict(self) -> Dict[str, Any]:
        """Plain-JSON echo of the effective configuration, in the file's own layout."""
        ens = asdict(self.ensemble)
        newton = ens.pop("newton")
        return {
            **ens,
            "newton": {
                "tol": newton["tol"],
                "max_iter": newton["max_iter"],
                "dedup_radius_per_m": newton["dedup_radius"],
            },
            "cavity": {**asdict(self.cavity), "x0_m": list(self.cavity.x0_m)},
            "grid": {**asdict(self.grid), "kappa_per_m": list(self.grid.kappa_per_m)},
        }


# ========== VALUE CHECKS ==========


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {json.dumps(value)}", key_path=path)
    if not math.isfinite(value):
        raise ConfigError("expected a finite number", key_path=path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {json.dumps(value)}", key_path=path)
    return value


def _positive(value: Any, path: str) -> float:
    number = _number(value, path)
    if not number > 0:
        raise ConfigError(f"must be positive, got {number}", key_path=path)
    return number


def _non_negative(value: Any, path: str) -> float:
    number = _number(value, path)
    if number < 0:
        raise ConfigError(f"must be non-negative, got {number}", key_path=path)
    return number


def _positive_int(value: Any, path: str) -> int:
    number = _integer(value, path)
    if number < 1:
        raise ConfigError(f"must be at least 1, got {number}", key_path=path)
    return number


def _fraction(value: Any, path: str) -> float:
    number = _number(value, path)
    if not 0.0 <= number < 1.0:
        raise ConfigError(f"must lie in [0, 1), got {number}", key_path=path)
    return number


def _seed(value: Any, path: str) -> int:
    number = _integer(value, path)
    if not 0 <= number < 2**64:
        raise ConfigError(f"must lie in [0, 2^64), got {number}", key_path=path)
    return number


def _cutoff_factor(value: Any, path: str) -> float:
    number = _number(value, path)
    if number < 25.0:
        raise ConfigError(f"must be at least 25, got {number}", key_path=path)
    return number


def _choice(parser: Callable[[str], Any]) -> Callable[[Any, str], str]:
    def check(value: Any, path: str) -> str:
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {json.dumps(value)}", key_path=path)
        try:
            return parser(value).value
        except ValueError as e:
            raise ConfigError(str(e), key_path=path)

    return check


def _optional(check: Callable[[Any, str], Any]) -> Callable[[Any, str], Any]:
    def wrapped(value: Any, path: str) -> Any:
        return None if value is None else check(value, path)

    return wrapped


def _point(value: Any, path: str) -> Tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise ConfigError("expected [x, y]", key_path=path)
    return (_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def _positive_list(value: Any, path: str) -> Tuple[float, ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError("expected a non-empty list of numbers", key_path=path)
    return tuple(_positive(item, f"{path}[{i}]") for i, item in enumerate(value))


# ========== SCHEMA ==========

_ENSEMBLE_FIELDS: Dict[str, Callable[[Any, str], Any]] = {
    "n_cavities": _positive_int,
    "c_min_m": _positive,
    "c_max_m": _positive,
    "antenna_radius_m": _positive,
    "f_max_GHz": _positive,
    "missing_fraction": _fraction,
    "master_seed": _seed,
    "bins": _positive_int,
    "s_max": _positive,
    "resonance_condition": _choice(parse_condition),
    "spacing_variable": _choice(parse_spacing_variable),
    "xi_convention": _choice(XiConvention),
    "cutoff_factor": _cutoff_factor,
    "max_modes": _positive_int,
}

_NEWTON_FIELDS: Dict[str, Callable[[Any, str], Any]] = {
    "tol": _positive,
    "max_iter": _positive_int,
    "dedup_radius_per_m": _optional(_positive),
}

_CAVITY_FIELDS: Dict[str, Callable[[Any, str], Any]] = {
    "c1_m": _positive,
    "c2_m": _positive,
    "x0_m": _point,
    "band_min_GHz": _non_negative,
    "band_max_GHz": _positive,
}

_GRID_FIELDS: Dict[str, Callable[[Any, str], Any]] = {
    "k_min_per_m": _positive,
    "k_max_per_m": _positive,
    "k_step_per_m": _positive,
    "kappa_per_m": _positive_list,
}

_SECTIONS = ("newton", "cavity", "grid")


def _read_section(raw: Any, fields: Dict[str, Callable[[Any, str], Any]], path: str) -> Dict[str, Any]:
    if not isinstance(raw, dict):
        raise ConfigError("expected an object", key_path=path or "<root>")
    values: Dict[str, Any] = {}
    for key, value in raw.items():
        if path == "" and key in _SECTIONS:
            continue
        if key not in fields:
            available = ", ".join(sorted(fields) + ([] if path else list(_SECTIONS)))
            raise ConfigError(f"unknown key. Available: {available}", key_path=_join(path, key))
        values[key] = fields[key](value, _join(path, key))
    return values


def parse_config(document: Any) -> RunConfig:
    """
    Validate a decoded JSON document.

    Raises:
        ConfigError: With the offending key path
    """
    top = _read_section(document, _ENSEMBLE_FIELDS, "")
    newton_raw = _read_section(document.get("newton", {}), _NEWTON_FIELDS, "newton")
    cavity_raw = _read_section(document.get("cavity", {}), _CAVITY_FIELDS, "cavity")
    grid_raw = _read_section(document.get("grid", {}), _GRID_FIELDS, "grid")

    c_min = top.get("c_min_m", control.c_min_m)
    c_max = top.get("c_max_m", control.c_max_m)
    if not c_min < c_max:
        raise ConfigError(f"must exceed c_min_m ({c_min}), got {c_max}", key_path="c_max_m")

    if "dedup_radius_per_m" in newton_raw:
        newton_raw["dedup_radius"] = newton_raw.pop("dedup_radius_per_m")
    newton = NewtonOptions(**newton_raw)

    cavity = CavitySpec(**cavity_raw)
    if not cavity.band_min_GHz < cavity.band_max_GHz:
        raise ConfigError(
            f"must exceed band_min_GHz ({cavity.band_min_GHz}), got {cavity.band_max_GHz}", key_path="cavity.band_max_GHz"
        )
    if not cavity.rect.is_interior(cavity.x0_m):
        raise ConfigError(f"point {list(cavity.x0_m)} is not inside the cavity", key_path="cavity.x0_m")

    grid = GridSpec(**grid_raw)
    if not grid.k_min_per_m < grid.k_max_per_m:
        raise ConfigError(f"must exceed k_min_per_m ({grid.k_min_per_m}), got {grid.k_max_per_m}", key_path="grid.k_max_per_m")

    try:
        ensemble = EnsembleSpec(newton=newton, **top)
    except CavityScatterError as e:
        raise ConfigError(str(e), key_path="<root>")
    return RunConfig(ensemble=ensemble, cavity=cavity, grid=grid)


def read_config(path: Optional[Path] = None) -> RunConfig:
    """
    Read and validate a run configuration; no path gives the all-default configuration.

    Raises:
        ConfigError: If the file is missing, is not JSON, or fails validation
    """
    if path is None:
        return RunConfig()
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file {path} does not exist")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {str(e)}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {str(e)}")
    return parse_config(document)
