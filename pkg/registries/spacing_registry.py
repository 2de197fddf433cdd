"""
Spacing Registry - Maps the configured spacing variable to its level transform.
"""

from enum import Enum
from typing import Callable, Dict, Union

import numpy as np

from billiard import Rectangle
from spectral_stats.levels import LevelSequence, energy_levels, frequency_levels


class SpacingVariable(Enum):
    """Variable in which nearest-neighbour spacings are taken."""

    ENERGY = "energy"        # Re E = (Re k)^2 unfolded with the Weyl counting function
    FREQUENCY = "frequency"  # Frequencies in units of the mean frequency spacing


DEFAULT_SPACING_VARIABLE = SpacingVariable.ENERGY

# ========== LEVEL TRANSFORM FACTORIES ==========
_TRANSFORMS: Dict[SpacingVariable, Callable[[np.ndarray, Rectangle], LevelSequence]] = {
    SpacingVariable.ENERGY: energy_levels,
    SpacingVariable.FREQUENCY: frequency_levels,
}


def parse_spacing_variable(name: str) -> SpacingVariable:
    name_lower = str(name).lower()
    for variable in SpacingVariable:
        if variable.value == name_lower:
            return variable
    available = ", ".join(v.value for v in SpacingVariable)
    raise ValueError(f"Unknown spacing variable '{name}'. Available: {available}")


def get_level_transform(
    variable: Union[SpacingVariable, str, None] = None,
) -> Callable[[np.ndarray, Rectangle], LevelSequence]:
    """Transform from real resonance wavenumbers to an unfolded LevelSequence."""
    if variable is None:
        variable = DEFAULT_SPACING_VARIABLE
    elif isinstance(variable, str):
        variable = parse_spacing_variable(variable)
    return _TRANSFORMS[variable]
