"""
Reflection and transmission amplitudes of the point junction and of a tube of radius a.
"""

import logging
import math
from dataclasses import dataclass

import control
from coupling.params import CouplingParams, identify_parameters
from errors import DomainError, SingularError
from specfun import EULER_GAMMA, hankel1, hankel1_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AmplitudePair:
    r: complex
    t: complex

    @property
    def reflection_probability(self) -> float:
        return abs(self.r) ** 2

    @property
    def transmission_probability(self) -> float:
        return abs(self.t) ** 2


def _check_wavenumber(k: float) -> None:
    if not (k > 0 and math.isfinite(k)):
        raise DomainError(f"Wavenumber must be positive, got {k}")


def _point_denominators(p: CouplingParams, k: float):
    log_factor = 1.0 + (2j / math.pi) * (EULER_GAMMA - p.D + math.log(k / 2.0))
    coupling = (2j / math.pi) * p.B * p.C
    d_plus = (p.A + 1j * k) * log_factor + coupling
    d_minus = (p.A - 1j * k) * log_factor + coupling
    return d_plus, d_minus


def point_amplitudes(p: CouplingParams, k: float) -> AmplitudePair:
    """
    Plane-wave amplitudes of the point coupling.

    Args:
        p: Junction coefficients
        k: Wavenumber in 1/m

    Returns:
        r = -D_-/D_+ and t = 2iCk/D_+

    Raises:
        SingularError: If |D_+| vanishes
    """
    _check_wavenumber(k)
    d_plus, d_minus = _point_denominators(p, k)
    if abs(d_plus) < control.singular_tolerance:
        raise SingularError(f"Point-coupling denominator vanishes at k={k}")
    return AmplitudePair(r=-d_minus / d_plus, t=2j * p.C * k / d_plus)


def point_flux_balance(p: CouplingParams, k: float) -> float:
    """|D_+|^2 - |D_-|^2 - (8/pi) k BC, zero up to rounding."""
    _check_wavenumber(k)
    d_plus, d_minus = _point_denominators(p, k)
    return abs(d_plus) ** 2 - abs(d_minus) ** 2 - (8.0 / math.pi) * k * p.B * p.C


def _tube_denominators(a: float, order: int, k: float):
    if not (a > 0 and math.isfinite(a)):
        raise DomainError(f"Tube radius must be positive, got {a}")
    _check_wavenumber(k)
    z = k * a
    h = hankel1(order, z)
    hp = hankel1_prime(order, z)
    d_plus = (1.0 + 2j * z) * h + 2.0 * z * hp
    d_minus = (1.0 - 2j * z) * h + 2.0 * z * hp
    return z, d_plus, d_minus


def tube_amplitudes(a: float, order: int, k: float) -> AmplitudePair:
    """
    Partial-wave amplitudes of a tube of radius a meeting the plane.

    Args:
        a: Tube radius in meters
        order: Angular momentum l in [0, 10]
        k: Wavenumber in 1/m

    Returns:
        r_a = -D_-/D_+ and t_a = 4i sqrt(2ka/pi)/D_+
    """
    z, d_plus, d_minus = _tube_denominators(a, order, k)
    if abs(d_plus) < control.singular_tolerance:
        raise SingularError(f"Tube denominator vanishes at ka={z}, l={order}")
    return AmplitudePair(r=-d_minus / d_plus, t=4j * math.sqrt(2.0 * z / math.pi) / d_plus)


def tube_flux_balance(a: float, order: int, k: float) -> float:
    """|D_+|^2 - |D_-|^2 - 32ka/pi; vanishes by the Wronskian."""
    z, d_plus, d_minus = _tube_denominators(a, order, k)
    return abs(d_plus) ** 2 - abs(d_minus) ** 2 - 32.0 * z / math.pi


def long_wave_parameter(a: float, k: float) -> float:
    return k * a


def is_long_wave(a: float, k: float) -> bool:
    return long_wave_parameter(a, k) < control.long_wave_limit


def low_energy_mismatch(a: float, k: float) -> float:
    """|r_point - r_tube| for the identified junction and the s-wave tube."""
    point = point_amplitudes(identify_parameters(a), k)
    tube = tube_amplitudes(a, 0, k)
    if not is_long_wave(a, k):
        logger.debug(f"Mismatch requested outside the long-wave regime (ka={k * a:.3g})")
    return abs(point.r - tube.r)
