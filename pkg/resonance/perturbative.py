"""
Weak-coupling estimate of a resonance from its parent eigenvalue.

Near a visible eigenvalue lambda with summed weight w, Z = w/(lambda - E) + Z_s with Z_s the
remainder. With eps = c a sqrt(E) the condition pi Z (1 + i eps) = 1 reads

    R(E) + i eps / (pi (1 + eps^2)) = 0,   R(E) = w/(lambda - E) + Z_s(E) - 1/(pi (1 + eps^2))

R is real and increasing between visible poles. Its zero E_r in the interval next to lambda
(above it when R_s(lambda) = Z_s - 1/pi(1 + eps^2) is positive, below otherwise) is the shifted
level; to first order in eps the halfwidth is

    Gamma = eps / (pi (1 + eps^2) R'(E_r)),   R'(E) = w/(lambda - E)^2 + dZ_s/dE.

Without the dZ_s/dE term this reduces to pi w eps / (pi Z_s - 1)^2 at E = lambda.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

import control
from billiard import ModeIndex, eigenvalue
from errors import IsolationError
from resonance.system import ResonatorSystem

logger = logging.getLogger(__name__)

# Bracket ends stay this far (relative) from the neighbouring poles
_BRACKET_MARGIN = 1e-9


@dataclass(frozen=True)
class PerturbativeEstimate:
    eigenvalue: float
    weight: float
    energy_shift: complex
    halfwidth: float
    background_factor: float  # halfwidth / (pi w c a sqrt(lambda))
    smooth_z: float

    @property
    def energy(self) -> complex:
        return self.eigenvalue + self.energy_shift

    @property
    def k(self) -> complex:
        """Estimated resonance wavenumber in the lower half-plane."""
        root = complex(self.energy) ** 0.5
        return complex(root.real, -abs(root.imag))


def _level_members(sys: ResonatorSystem, lam: float):
    k = math.sqrt(lam)
    window = max(1e-9 * k, 1e-12)
    for level in sys.evaluator.visible_levels(k - window, k + window):
        if abs(level.eigenvalue - lam) <= control.pole_tolerance * lam:
            return level
    return None


def _neighbours(sys: ResonatorSystem, lam: float) -> Tuple[Optional[float], Optional[float]]:
    """Nearest distinct visible eigenvalues below and above `lam`."""
    ev = sys.evaluator
    values = ev.eigenvalues[ev.visible]
    distinct = np.abs(values - lam) > control.pole_tolerance * lam
    below = values[distinct & (values < lam)]
    above = values[distinct & (values > lam)]
    return (float(below.max()) if below.size else None, float(above.min()) if above.size else None)


def _radiation(sys: ResonatorSystem, energy: float) -> float:
    return sys.condition.radiation_coefficient * sys.a * math.sqrt(abs(energy))


def _shifted_level(sys: ResonatorSystem, lam: float, weight: float, members, smooth: float) -> float:
    """
    Zero of R next to `lam`, from the product form h(E) = (E - lambda) R_s(E) - w.

    h(lambda) = -w < 0 and h grows without bound towards the neighbouring pole, so the bracket
    holds exactly one sign change. Falls back to lambda + w / R_s(lambda) when no bracket exists.
    """

    def h(energy: float) -> float:
        eps = _radiation(sys, energy)
        remainder = sys.z(energy, exclude=members).real - 1.0 / (math.pi * (1.0 + eps * eps))
        return (energy - lam) * remainder - weight

    below, above = _neighbours(sys, lam)
    if smooth >= 0.0:
        edge = above if above is not None else sys.evaluator.max_energy
        bracket = (lam, edge - _BRACKET_MARGIN * abs(edge))
    else:
        edge = below if below is not None else -sys.evaluator.max_energy
        bracket = (edge + _BRACKET_MARGIN * abs(edge), lam)
    try:
        if h(bracket[0]) * h(bracket[1]) < 0.0:
            return float(brentq(h, *bracket, xtol=1e-14 * max(lam, 1.0), rtol=4.0 * np.finfo(float).eps))
    except (ValueError, ArithmeticError) as e:
        logger.debug(f"No bracketed shift for {lam:.8g}: {str(e)}")
    return lam + weight / smooth if smooth != 0.0 else lam


def estimate_level(
    sys: ResonatorSystem, lam: float, weight: float, members=None, check_isolation: bool = True
) -> PerturbativeEstimate:
    """
    Estimate for the eigenvalue `lam` carrying total weight `weight`.

    Raises:
        IsolationError: If the nearest distinct visible eigenvalue lies within
            control.isolation_factor estimated widths
    """
    smooth_z = sys.z(lam, exclude=members).real
    eps = _radiation(sys, lam)
    if weight <= 0.0:
        background = 1.0 / abs(math.pi * smooth_z * (1.0 + 1j * eps) - 1.0) ** 2
        return PerturbativeEstimate(lam, 0.0, 0j, 0.0, background, smooth_z)

    smooth = smooth_z - 1.0 / (math.pi * (1.0 + eps * eps))
    shifted = _shifted_level(sys, lam, weight, members, smooth)
    eps_r = _radiation(sys, shifted)
    delta = shifted - lam
    slope = sys.z_derivative(shifted, exclude=members).real
    if delta != 0.0:
        slope += weight / (delta * delta)
    halfwidth = eps_r / (math.pi * (1.0 + eps_r * eps_r) * slope) if slope > 0.0 else 0.0
    background = halfwidth / (math.pi * weight * eps)
    if check_isolation:
        gap = sys.evaluator.neighbour_gap(lam)
        if gap <= control.isolation_factor * halfwidth:
            raise IsolationError(
                f"Eigenvalue {lam:.6g} has a visible neighbour at distance {gap:.3g}, "
                f"within {control.isolation_factor:g} estimated widths ({halfwidth:.3g})"
            )
    return PerturbativeEstimate(lam, weight, complex(delta, -halfwidth), halfwidth, background, smooth_z)


def perturbative_estimate(sys: ResonatorSystem, idx: ModeIndex) -> PerturbativeEstimate:
    """
    Weak-coupling position and halfwidth of the resonance born from mode `idx`.

    Args:
        sys: Scattering model
        idx: Parent mode; degenerate partners are merged into one level

    Returns:
        PerturbativeEstimate; an invisible mode gives zero shift and zero width

    Raises:
        IsolationError: If the level is not isolated
    """
    lam = eigenvalue(sys.rect, idx)
    level = _level_members(sys, lam)
    if level is None:
        logger.debug(f"Mode ({idx.n}, {idx.m}) is invisible from {sys.x0}")
        eig = sys.evaluator.eigenvalues
        coincident = np.flatnonzero(np.abs(eig - lam) <= control.pole_tolerance * lam)
        return estimate_level(sys, lam, 0.0, members=coincident, check_isolation=False)
    return estimate_level(sys, level.eigenvalue, level.weight, members=level.members)
