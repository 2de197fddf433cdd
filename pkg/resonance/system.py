"""
Antenna-cavity scattering model.

An antenna of radius a attached at x0 couples the lead to the cavity through
Z(k^2) = xi(x0; k) - ln(a)/2pi. On the real axis the reflection amplitude is

    r(k) = -[pi Z (1 - 2ika) - 1] / [pi Z (1 + 2ika) - 1]

and resonances are the complex zeros of the active condition form.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from scipy.constants import c as SPEED_OF_LIGHT

import control
from billiard import GreenEvaluator, ModeIndex, Point, Rectangle, XiConvention, eigenvalue
from condition_strategies import BaseConditionStrategy
from coupling import CouplingParams, identify_parameters, is_long_wave
from errors import DomainError
from registries.condition_registry import get_condition

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ResonatorSystem:
    """Rectangle, antenna point and radius with the derived coupling and basis."""

    rect: Rectangle
    x0: Point
    a: float
    params: CouplingParams
    evaluator: GreenEvaluator
    condition: BaseConditionStrategy

    @classmethod
    def build(
        cls,
        rect: Rectangle,
        x0: Point,
        a: float,
        k_max: float,
        cutoff_factor: float = None,
        condition=None,
        convention: XiConvention = XiConvention.GREEN,
        max_modes: Optional[int] = None,
    ) -> "ResonatorSystem":
        """
        Build the model with a basis large enough for wavenumbers up to k_max.

        Args:
            rect: Cavity geometry
            x0: Antenna point, strictly interior
            a: Antenna radius in meters
            k_max: Largest real wavenumber of interest in 1/m
            cutoff_factor: LAMBDA / k_max^2, at least 25
            condition: ResonanceCondition, its name, a strategy instance, or None for the active form
            convention: Normalization of xi
            max_modes: Cap on the basis size

        Raises:
            DomainError: For a non-positive radius or wavenumber, or a cutoff factor below 25
        """
        cutoff_factor = control.cutoff_factor if cutoff_factor is None else cutoff_factor
        if cutoff_factor < 25.0:
            raise DomainError(f"cutoff_factor must be at least 25, got {cutoff_factor}")
        if not k_max > 0:
            raise DomainError(f"k_max must be positive, got {k_max}")
        params = identify_parameters(a)
        ground = eigenvalue(rect, ModeIndex(1, 1))
        cutoff = cutoff_factor * max(k_max**2, ground)
        evaluator = GreenEvaluator.build(rect, x0, cutoff, max_modes=max_modes, convention=convention)
        if not isinstance(condition, BaseConditionStrategy):
            condition = get_condition(condition)
        if not is_long_wave(a, k_max):
            logger.warning(f"ka = {k_max * a:.4f} at the top of the band leaves the long-wave regime")
        return cls(rect=rect, x0=evaluator.x0, a=float(a), params=params, evaluator=evaluator, condition=condition)

    @property
    def log_radius_term(self) -> float:
        return math.log(self.a) / (2.0 * math.pi)

    def z(self, ksq: complex, exclude=None) -> complex:
        return self.evaluator.xi(ksq, exclude) - self.log_radius_term

    def z_derivative(self, ksq: complex, exclude=None) -> complex:
        """dZ/d(k^2)."""
        return self.evaluator.xi_derivative(ksq, exclude)


@dataclass(frozen=True)
class Resonance:
    """Complex zero of the resonance condition."""

    k: complex
    residual: float
    seed_mode: Optional[ModeIndex] = None

    @property
    def energy(self) -> complex:
        return self.k * self.k

    @property
    def frequency_GHz(self) -> float:
        return SPEED_OF_LIGHT * self.k.real / (2.0 * math.pi) / 1e9

    @property
    def halfwidth(self) -> float:
        """|Im E| in 1/m^2."""
        return abs(self.energy.imag)


def z_eval(sys: ResonatorSystem, ksq: complex) -> complex:
    """Z = xi(x0; k) - ln(a)/2pi."""
    return sys.z(ksq)


def _check_real_wavenumber(k: float) -> float:
    if isinstance(k, complex) or not (k > 0 and math.isfinite(k)):
        raise DomainError(f"Reflection needs a positive real wavenumber, got {k}")
    return float(k)


def reflection(sys: ResonatorSystem, k: float) -> complex:
    """
    Closed-cavity reflection amplitude on the real axis; |r| = 1.

    Raises:
        PoleError: If k^2 is a visible eigenvalue
    """
    k = _check_real_wavenumber(k)
    z = sys.z(k * k).real
    ka = k * sys.a
    if abs(z) > 1.0:
        inverse = 1.0 / z
        return -(math.pi * (1.0 - 2j * ka) - inverse) / (math.pi * (1.0 + 2j * ka) - inverse)
    return -(math.pi * z * (1.0 - 2j * ka) - 1.0) / (math.pi * z * (1.0 + 2j * ka) - 1.0)


def condition_residual(sys: ResonatorSystem, k: complex) -> complex:
    """F(k) = pi Z(k^2)(1 + i c k a) - 1 for the system's condition form."""
    k = complex(k)
    if not k.real > 0:
        raise DomainError(f"Condition needs Re k > 0, got {k}")
    return sys.condition.residual(sys.z(k * k), k, sys.a)


def condition_derivative(sys: ResonatorSystem, k: complex) -> complex:
    """Analytic dF/dk."""
    k = complex(k)
    ksq = k * k
    factor = sys.condition.coupling_factor(k, sys.a)
    return math.pi * (sys.z_derivative(ksq) * 2.0 * k * factor + sys.z(ksq) * sys.condition.factor_derivative(sys.a))
