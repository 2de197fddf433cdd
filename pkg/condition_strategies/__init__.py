"""
Condition Strategies Package.

Each resonance-condition form lives in its own file behind BaseConditionStrategy.
"""

from .base_condition import BaseConditionStrategy
from .reduced_radiation_condition import ReducedRadiationCondition
from .reflection_pole_condition import ReflectionPoleCondition

__all__ = [
    "BaseConditionStrategy",
    "ReducedRadiationCondition",
    "ReflectionPoleCondition",
]
