"""
Base adapter interface responsible for reading external level and spacing data.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np

from billiard import Rectangle
from spectral_stats import (
    LevelSequence,
    Provenance,
    SpacingHistogram,
    k_from_freq,
    nearest_spacings,
    normalize_mean_spacing,
    unfold,
)


class LevelUnit(Enum):
    """Unit declared for an ingested level list."""

    GHZ = "GHz"        # Resonance frequencies
    PER_M = "per_m"    # Wavenumbers k in 1/m
    PER_M2 = "per_m2"  # Energies k^2 in 1/m^2


def parse_level_unit(name: str) -> LevelUnit:
    for unit in LevelUnit:
        if unit.value.lower() == str(name).lower():
            return unit
    available = ", ".join(u.value for u in LevelUnit)
    raise ValueError(f"Unknown unit '{name}'. Available: {available}")


@dataclass(frozen=True, eq=False)
class IngestedLevels:
    """Sorted external levels with the unit they were declared in."""

    source: Path
    unit: LevelUnit
    values: np.ndarray

    def energies(self) -> np.ndarray:
        """Levels converted to energies k^2 in 1/m^2."""
        if self.unit is LevelUnit.GHZ:
            return np.asarray(k_from_freq(self.values), dtype=float) ** 2
        if self.unit is LevelUnit.PER_M:
            return self.values**2
        return self.values.copy()

    def to_sequence(self) -> LevelSequence:
        return LevelSequence.from_values(self.energies(), provenance=Provenance.INGESTED)

    def unfolded_spacings(self, rect: Optional[Rectangle] = None) -> np.ndarray:
        """
        Nearest spacings in unfolded units.

        With the cavity geometry the Weyl counting function is used; without it the
        energies are scaled to unit mean spacing.
        """
        levels = self.to_sequence()
        unfolded = unfold(levels, rect) if rect is not None else normalize_mean_spacing(levels)
        return nearest_spacings(unfolded)


class LevelAdapter(ABC):
    """
    Abstract base class for level data adapters.
    All adapters must implement the three readers below.
    """

    @abstractmethod
    def read_levels(self, path: Path, unit: LevelUnit) -> IngestedLevels:
        """
        Reads a list of levels.

        Args:
            path (Path): File holding one level per row
            unit (LevelUnit): Declared unit of the values

        Returns:
            IngestedLevels: Sorted levels

        Raises:
            OutputError: If the file cannot be read or holds malformed rows
            DomainError: If a value is negative or not finite
        """
        pass

    @abstractmethod
    def read_spacings(self, path: Path) -> np.ndarray:
        """
        Reads unfolded spacings, as written to spacings.csv.
        """
        pass

    @abstractmethod
    def read_histogram(self, path: Path) -> SpacingHistogram:
        """
        Reads a spacing histogram, as written to histogram.csv.

        Returns:
            SpacingHistogram: Bin edges and densities; the sample count is not stored and reads as 0
        """
        pass
