"""
Monte-Carlo ensemble of random rectangular cavities with a point antenna.

Every cavity draws from its own generator seeded by child_seed(master_seed, index), so the
outcome does not depend on how cavities are scheduled across workers.
"""

import logging
import math
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

import control
from billiard import Point, Rectangle, enumerate_modes
from billiard.green import XiConvention
from errors import CavityScatterError, ConfigError, DomainError, ResourceError
from registries.condition_registry import parse_condition
from registries.spacing_registry import get_level_transform, parse_spacing_variable
from resonance import NewtonOptions, Resonance, ResonatorSystem, find_resonances
from spectral_stats.histogram import SpacingHistogram, build_histogram
from spectral_stats.levels import LevelSequence, nearest_spacings, thin_random, unfold
from spectral_stats.units import k_from_freq

logger = logging.getLogger(__name__)

_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1
_CONTROL_ATTEMPTS = 10_000


def child_seed(master_seed: int, cavity_index: int) -> int:
    """SplitMix64 output for the state master_seed + golden_gamma * (cavity_index + 1)."""
    z = (int(master_seed) + _GOLDEN_GAMMA * (int(cavity_index) + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one ensemble run; defaults follow control.py."""

    n_cavities: int = control.n_cavities
    c_min_m: float = control.c_min_m
    c_max_m: float = control.c_max_m
    antenna_radius_m: float = control.antenna_radius_m
    f_max_GHz: float = control.f_max_GHz
    missing_fraction: float = control.missing_fraction
    master_seed: int = control.master_seed
    bins: int = control.bins
    s_max: float = control.s_max
    resonance_condition: str = "rr1"
    spacing_variable: str = "energy"
    xi_convention: str = "green"
    cutoff_factor: float = control.cutoff_factor
    max_modes: int = control.max_modes
    newton: NewtonOptions = field(default_factory=NewtonOptions)

    def __post_init__(self):
        if int(self.n_cavities) != self.n_cavities or self.n_cavities < 1:
            raise DomainError(f"n_cavities must be a positive integer, got {self.n_cavities}")
        if not (0 < self.c_min_m < self.c_max_m):
            raise DomainError(f"Side range must satisfy 0 < c_min < c_max, got ({self.c_min_m}, {self.c_max_m})")
        if not self.antenna_radius_m > 0:
            raise DomainError(f"Antenna radius must be positive, got {self.antenna_radius_m}")
        if not self.f_max_GHz > 0:
            raise DomainError(f"f_max must be positive, got {self.f_max_GHz}")
        if not (0.0 <= self.missing_fraction < 1.0):
            raise DomainError(f"missing_fraction must lie in [0, 1), got {self.missing_fraction}")
        if not (0 <= int(self.master_seed) <= _MASK64):
            raise DomainError(f"master_seed must be an unsigned 64-bit integer, got {self.master_seed}")
        if self.cutoff_factor < 25.0:
            raise DomainError(f"cutoff_factor must be at least 25, got {self.cutoff_factor}")
        parse_condition(self.resonance_condition)
        parse_spacing_variable(self.spacing_variable)
        XiConvention(self.xi_convention)

    @property
    def k_max(self) -> float:
        return k_from_freq(self.f_max_GHz)


@dataclass(eq=False)
class CavityOutcome:
    cavity_id: int
    rect: Optional[Rectangle]
    x0: Optional[Point]
    resonances: List[Resonance] = field(default_factory=list)
    spacings: np.ndarray = field(default_factory=lambda: np.empty(0))
    removed: int = 0
    status: str = "ok"
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(eq=False)
class EnsembleReport:
    spec: EnsembleSpec
    outcomes: List[CavityOutcome]
    histogram: SpacingHistogram

    @property
    def failed_cavities(self) -> List[int]:
        return [o.cavity_id for o in self.outcomes if not o.ok]

    @property
    def resonances(self) -> List[Tuple[int, Resonance]]:
        return [(o.cavity_id, r) for o in self.outcomes for r in o.resonances]

    @property
    def spacings(self) -> np.ndarray:
        """Pooled spacings in cavity order."""
        parts = [o.spacings for o in self.outcomes if o.ok]
        return np.concatenate(parts) if parts else np.empty(0)

    @property
    def pooled_mean_spacing(self) -> float:
        s = self.spacings
        return float(np.mean(s)) if s.size else math.nan


def draw_cavity(spec: EnsembleSpec, rng: np.random.Generator) -> Tuple[Rectangle, Point]:
    """Uniform sides in the configured range and an antenna point away from the walls."""
    c1, c2 = rng.uniform(spec.c_min_m, spec.c_max_m, size=2)
    rect = Rectangle(float(c1), float(c2))
    margin = control.wall_exclusion_radii * spec.antenna_radius_m
    while True:
        x0 = (float(rng.uniform(0.0, rect.c1)), float(rng.uniform(0.0, rect.c2)))
        if rect.wall_distance(x0) >= margin:
            return rect, x0


def _near_rational(ratio: float) -> bool:
    for q in range(1, control.aspect_guard_max_denominator + 1):
        p = round(ratio * q)
        if p >= 1 and abs(ratio - p / q) < control.aspect_guard_tolerance:
            return True
    return False


def draw_control_rectangle(c_range: Tuple[float, float], rng: np.random.Generator) -> Rectangle:
    """Uniform rectangle whose squared aspect ratio stays away from p/q with q <= 10."""
    for _ in range(_CONTROL_ATTEMPTS):
        c1, c2 = rng.uniform(c_range[0], c_range[1], size=2)
        # Eigenvalues depend on (c1/c2)^2; rational squared ratios bring degeneracies
        if not _near_rational((c1 / c2) ** 2):
            return Rectangle(float(c1), float(c2))
    raise ResourceError(f"No irrational-looking aspect ratio found in {_CONTROL_ATTEMPTS} draws")


def _cutoff_for_count(rect: Rectangle, n_levels: int) -> float:
    """Energy at which the Weyl count reaches n_levels, inverted in sqrt(E)."""
    target = 1.1 * n_levels + 20
    area, perimeter = rect.area, rect.perimeter
    root = (perimeter + math.sqrt(perimeter**2 + 4.0 * area * (4.0 * math.pi * target - math.pi))) / (2.0 * area)
    return root**2


def decoupled_control_spacings(
    n_levels: int, rng: np.random.Generator, c_range: Tuple[float, float] = (control.c_min_m, control.c_max_m)
) -> Tuple[Rectangle, np.ndarray]:
    """
    Unfolded spacings of the lowest n_levels eigenvalues of a guarded random rectangle.

    Returns:
        The rectangle and its n_levels - 1 spacings
    """
    if n_levels < 2:
        raise DomainError(f"Control needs at least 2 levels, got {n_levels}")
    rect = draw_control_rectangle(c_range, rng)
    table = enumerate_modes(rect, _cutoff_for_count(rect, n_levels))
    if len(table) < n_levels:
        raise ResourceError(f"Control basis holds {len(table)} levels, fewer than {n_levels}")
    levels = LevelSequence.from_values(table.eigenvalues[:n_levels])
    spacings = nearest_spacings(unfold(levels, rect))
    logger.info(f"Decoupled control on {rect.c1:.4f} x {rect.c2:.4f} m: {spacings.size} spacings")
    return rect, spacings


def process_cavity(spec: EnsembleSpec, cavity_id: int) -> CavityOutcome:
    """Draw, solve, unfold and thin one cavity; numerical failures are recorded, not raised."""
    rng = np.random.default_rng(child_seed(spec.master_seed, cavity_id))
    rect, x0 = draw_cavity(spec, rng)
    outcome = CavityOutcome(cavity_id=cavity_id, rect=rect, x0=x0)
    try:
        k_max = spec.k_max
        system = ResonatorSystem.build(
            rect,
            x0,
            spec.antenna_radius_m,
            k_max,
            cutoff_factor=spec.cutoff_factor,
            condition=spec.resonance_condition,
            convention=XiConvention(spec.xi_convention),
            max_modes=spec.max_modes,
        )
        found = find_resonances(system, (0.0, k_max), spec.newton)
        outcome.resonances = [r for r in found if r.k.real <= k_max]
        transform = get_level_transform(spec.spacing_variable)
        levels = transform(np.array([r.k.real for r in outcome.resonances]), rect)
        thinned = thin_random(levels, spec.missing_fraction, rng, rescale=True)
        outcome.removed = len(levels) - len(thinned)
        outcome.spacings = nearest_spacings(thinned)
        logger.info(
            f"Cavity {cavity_id}: {rect.c1:.4f} x {rect.c2:.4f} m, {len(outcome.resonances)} resonances, "
            f"{outcome.removed} removed, {outcome.spacings.size} spacings"
        )
    except CavityScatterError as e:
        logger.error(f"Error processing cavity {cavity_id}: {str(e)}")
        outcome.status = "failed"
        outcome.error = str(e)
    return outcome


def worker_count() -> int:
    """joblib n_jobs from the thread-cap environment variable; 0 or unset means all cores."""
    raw = os.environ.get(control.threads_env_var, "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"expected a non-negative integer, got {raw!r}", key_path=control.threads_env_var)
    if value < 0:
        raise ConfigError(f"expected a non-negative integer, got {value}", key_path=control.threads_env_var)
    return -1 if value == 0 else value


def run_ensemble(spec: EnsembleSpec, n_jobs: Optional[int] = None) -> EnsembleReport:
    """
    Process every cavity, pool the spacings and histogram them.

    Args:
        spec: Ensemble parameters
        n_jobs: joblib worker count; defaults to worker_count()

    Returns:
        EnsembleReport with per-cavity outcomes in cavity order and the pooled histogram
    """
    n_jobs = worker_count() if n_jobs is None else n_jobs
    logger.info(f"Running ensemble of {spec.n_cavities} cavities (seed {spec.master_seed}, n_jobs {n_jobs})")
    outcomes = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(process_cavity)(spec, cavity_id) for cavity_id in range(spec.n_cavities)
    )
    outcomes = sorted(outcomes, key=lambda o: o.cavity_id)
    pooled = [o.spacings for o in outcomes if o.ok]
    spacings = np.concatenate(pooled) if pooled else np.empty(0)
    histogram = build_histogram(spacings, spec.bins, spec.s_max)
    report = EnsembleReport(spec=spec, outcomes=outcomes, histogram=histogram)
    if report.failed_cavities:
        logger.warning(f"Failed cavities: {report.failed_cavities}")
    logger.info(f"Ensemble pooled {spacings.size} spacings, mean {report.pooled_mean_spacing:.4f}")
    return report
