"""
Antenna coupling: junction coefficients, scattering amplitudes and boundary values.
"""

from .amplitudes import (
    AmplitudePair,
    is_long_wave,
    long_wave_parameter,
    low_energy_mismatch,
    point_amplitudes,
    point_flux_balance,
    tube_amplitudes,
    tube_flux_balance,
)
from .boundary import bc_residual, greens_boundary_values, lead_fields
from .params import CouplingParams, identify_parameters, is_admissible_coupling

__all__ = [
    "AmplitudePair",
    "CouplingParams",
    "bc_residual",
    "greens_boundary_values",
    "identify_parameters",
    "is_admissible_coupling",
    "is_long_wave",
    "lead_fields",
    "long_wave_parameter",
    "low_energy_mismatch",
    "point_amplitudes",
    "point_flux_balance",
    "tube_amplitudes",
    "tube_flux_balance",
]
