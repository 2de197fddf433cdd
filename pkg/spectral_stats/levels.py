"""
Level sequences, unfolding, nearest-neighbour spacings and random thinning.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from billiard import Rectangle, weyl_mean_counting
from errors import DomainError
from spectral_stats.units import freq_from_k

logger = logging.getLogger(__name__)


class Provenance(Enum):
    COMPUTED = "computed"
    INGESTED = "ingested"


@dataclass(frozen=True, eq=False)
class LevelSequence:
    """Sorted, duplicate-free levels; energies in 1/m^2 or dimensionless when unfolded."""

    values: np.ndarray
    provenance: Provenance = Provenance.COMPUTED
    unfolded: bool = False

    @classmethod
    def from_values(cls, values, provenance: Provenance = Provenance.COMPUTED, unfolded: bool = False) -> "LevelSequence":
        arr = np.asarray(values, dtype=float).ravel()
        if not np.all(np.isfinite(arr)):
            raise DomainError("Level values must be finite")
        return cls(values=np.unique(arr), provenance=provenance, unfolded=unfolded)

    def __len__(self) -> int:
        return int(self.values.size)


def unfold(levels: LevelSequence, rect: Rectangle) -> LevelSequence:
    """Map energies through the smooth Weyl counting function of `rect`."""
    if levels.unfolded:
        raise DomainError("Levels are already unfolded")
    if len(levels) == 0:
        return LevelSequence(values=np.empty(0), provenance=levels.provenance, unfolded=True)
    return LevelSequence(
        values=np.asarray(weyl_mean_counting(rect, levels.values), dtype=float),
        provenance=levels.provenance,
        unfolded=True,
    )


def normalize_mean_spacing(levels: LevelSequence) -> LevelSequence:
    """Rescale so the mean nearest spacing is 1; for levels without a known counting function."""
    if len(levels) < 2:
        return LevelSequence(values=levels.values.copy(), provenance=levels.provenance, unfolded=True)
    mean_spacing = (levels.values[-1] - levels.values[0]) / (len(levels) - 1)
    if not mean_spacing > 0:
        raise DomainError("Cannot normalize a sequence with zero extent")
    return LevelSequence(values=levels.values / mean_spacing, provenance=levels.provenance, unfolded=True)


def nearest_spacings(x: LevelSequence) -> np.ndarray:
    """s_i = x_{i+1} - x_i; empty for fewer than two levels."""
    if len(x) < 2:
        return np.empty(0)
    return np.diff(x.values)


def thin_random(levels: LevelSequence, fraction: float, rng: np.random.Generator, rescale: bool = False) -> LevelSequence:
    """
    Remove floor(fraction * n + 0.5) distinct, uniformly chosen levels.

    Args:
        levels: Input sequence
        fraction: Share of levels overlooked, in [0, 1)
        rng: Random stream; the same stream state gives the same removal
        rescale: Multiply the kept (unfolded) values by n_kept/n, restoring unit mean spacing

    Returns:
        Thinned sequence with the same provenance
    """
    if not (0.0 <= fraction < 1.0):
        raise DomainError(f"Thinning fraction must lie in [0, 1), got {fraction}")
    n = len(levels)
    n_remove = int(np.floor(fraction * n + 0.5))
    if n_remove == 0:
        return levels
    removed = rng.choice(n, size=n_remove, replace=False)
    keep = np.ones(n, dtype=bool)
    keep[removed] = False
    values = levels.values[keep]
    if rescale:
        values = values * (values.size / n)
    logger.debug(f"Thinned {n_remove} of {n} levels")
    return LevelSequence(values=values, provenance=levels.provenance, unfolded=levels.unfolded)


# ========== SPACING VARIABLES ==========
# Each maps real resonance wavenumbers of one cavity to an unfolded sequence


def energy_levels(re_k: np.ndarray, rect: Rectangle) -> LevelSequence:
    """Unfolded Re E = (Re k)^2."""
    return unfold(LevelSequence.from_values(np.asarray(re_k, dtype=float) ** 2), rect)


def frequency_levels(re_k: np.ndarray, rect: Rectangle) -> LevelSequence:
    """Frequencies normalized by the cavity's mean frequency spacing."""
    return normalize_mean_spacing(LevelSequence.from_values(freq_from_k(np.asarray(re_k, dtype=float))))
