"""
Reduced Radiation Condition.

The displayed resonance equation with radiation factor (1 + ika), kept for comparison
against the reflection-pole form.
"""

from .base_condition import BaseConditionStrategy


class ReducedRadiationCondition(BaseConditionStrategy):
    """Resonance equation with half the radiation coefficient (c = 1)."""

    @property
    def radiation_coefficient(self) -> float:
        return 1.0

    def get_name(self) -> str:
        return "Reduced Radiation"

    def get_description(self) -> str:
        return "Zeros of pi Z(k^2)(1 + ika) - 1; widths come out about half those of the reflection-pole form"
