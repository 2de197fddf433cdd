"""
Generalized boundary values of b G(x, x0; k) and the junction residuals.
"""

import math
from typing import Tuple

from coupling.params import CouplingParams


def greens_boundary_values(b: complex, xi: complex) -> Tuple[complex, complex]:
    """(L0, L1) of the planar field b G(., x0; k): L0 = -b/2pi, L1 = b xi."""
    return -b / (2.0 * math.pi), b * xi


def bc_residual(
    p: CouplingParams, phi1: complex, dphi1: complex, L0: complex, L1: complex
) -> Tuple[complex, complex]:
    """
    Residuals of the junction condition; both vanish exactly when it holds.

    Returns:
        (phi1' - A phi1 - B L0, L1 - C phi1 - D L0)
    """
    res1 = dphi1 - p.A * phi1 - p.B * L0
    res2 = L1 - p.C * phi1 - p.D * L0
    return res1, res2


def lead_fields(p: CouplingParams, k: float, r: complex, z: complex) -> Tuple[complex, complex, complex, complex]:
    """
    Boundary data of the scattering solution with reflection amplitude r.

    The lead carries exp(-ikx) + r exp(ikx); the plane carries b G with b fixed by the
    second junction equation, b = C phi1 / Z.

    Returns:
        (phi1, phi1', L0, L1)
    """
    phi1 = 1.0 + r
    dphi1 = 1j * k * (1.0 - r)
    b = p.C * phi1 / z
    xi = z - p.D / (2.0 * math.pi)
    L0, L1 = greens_boundary_values(b, xi)
    return phi1, dphi1, L0, L1
