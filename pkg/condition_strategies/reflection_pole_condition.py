"""
Reflection Pole Condition.

Zeros of the denominator pi Z (1 + 2ika) - 1 of the closed-cavity reflection amplitude.
"""

from .base_condition import BaseConditionStrategy


class ReflectionPoleCondition(BaseConditionStrategy):
    """Resonances as poles of the reflection amplitude (c = 2)."""

    @property
    def radiation_coefficient(self) -> float:
        return 2.0

    def get_name(self) -> str:
        return "Reflection Pole"

    def get_description(self) -> str:
        return "Zeros of pi Z(k^2)(1 + 2ika) - 1, the denominator of the reflection amplitude"
