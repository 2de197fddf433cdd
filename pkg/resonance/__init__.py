"""
Antenna-cavity scattering: reflection, resonance condition, root finding and oracles.
"""

from .perturbative import PerturbativeEstimate, perturbative_estimate
from .phase_scan import (
    PhasePeak,
    phase_delay,
    phase_scan_oracle,
    phase_winding,
    reflection_on_grid,
    reflection_phase,
)
from .root_finder import NewtonOptions, find_resonances
from .system import (
    Resonance,
    ResonatorSystem,
    condition_derivative,
    condition_residual,
    reflection,
    z_eval,
)

__all__ = [
    "NewtonOptions",
    "PerturbativeEstimate",
    "PhasePeak",
    "Resonance",
    "ResonatorSystem",
    "condition_derivative",
    "condition_residual",
    "find_resonances",
    "perturbative_estimate",
    "phase_delay",
    "phase_scan_oracle",
    "phase_winding",
    "reflection",
    "reflection_on_grid",
    "reflection_phase",
    "z_eval",
]
