"""
Base Resonance Condition Interface.

A condition form fixes the radiation factor (1 + i c k a) multiplying pi Z in the
resonance equation pi Z(k^2)(1 + i c k a) - 1 = 0.
"""

import math
from abc import ABC, abstractmethod


class BaseConditionStrategy(ABC):
    """Abstract base class for resonance-condition forms."""

    def __init__(self):
        self.name = self.__class__.__name__.replace("Condition", "")

    @property
    @abstractmethod
    def radiation_coefficient(self) -> float:
        """Coefficient c of the radiation factor."""
        pass

    @abstractmethod
    def get_name(self) -> str:
        pass

    @abstractmethod
    def get_description(self) -> str:
        pass

    def coupling_factor(self, k: complex, a: float) -> complex:
        """Radiation factor 1 + i c k a."""
        return 1.0 + 1j * self.radiation_coefficient * k * a

    def factor_derivative(self, a: float) -> complex:
        """d/dk of the radiation factor."""
        return 1j * self.radiation_coefficient * a

    def residual(self, z: complex, k: complex, a: float) -> complex:
        """Condition value F = pi Z (1 + i c k a) - 1 for a given Z."""
        return complex(math.pi * z * self.coupling_factor(k, a) - 1.0)
