"""
Condition Registry - Selection of the resonance-condition form.

The resonance finder, the perturbative estimate and the reports ask this registry for the
active condition. Runs configured with `resonance_condition` pass the method explicitly.
"""

import logging
from enum import Enum
from typing import Dict, List, Optional, Union

from condition_strategies import BaseConditionStrategy, ReducedRadiationCondition, ReflectionPoleCondition

logger = logging.getLogger(__name__)


class ResonanceCondition(Enum):
    """Available resonance-condition forms."""

    RR1 = "rr1"    # Denominator of the reflection amplitude, factor (1 + 2ika)
    EQ18 = "eq18"  # Displayed resonance equation, factor (1 + ika)


# Configuration: Set the default condition form here
DEFAULT_RESONANCE_CONDITION = ResonanceCondition.RR1


class ConditionRegistry:
    """Registry for the resonance-condition strategies."""

    def __init__(self):
        self._strategies: Dict[ResonanceCondition, BaseConditionStrategy] = {
            ResonanceCondition.RR1: ReflectionPoleCondition(),
            ResonanceCondition.EQ18: ReducedRadiationCondition(),
        }
        self._active_method = DEFAULT_RESONANCE_CONDITION
        logger.debug(f"Condition Registry initialized with {len(self._strategies)} forms")

    def set_active_method(self, method: ResonanceCondition) -> None:
        if method not in self._strategies:
            raise ValueError(f"Unknown resonance condition: {method}")
        old_method = self._active_method
        self._active_method = method
        logger.info(f"Changed resonance condition: {old_method.value} -> {method.value}")

    def get_active_method(self) -> ResonanceCondition:
        return self._active_method

    def get_strategy(self, method: Optional[ResonanceCondition] = None) -> BaseConditionStrategy:
        """Strategy for `method`, or the active one."""
        method = method or self._active_method
        if method not in self._strategies:
            raise ValueError(f"Unknown resonance condition: {method}")
        return self._strategies[method]

    def get_available_methods(self) -> List[ResonanceCondition]:
        return list(self._strategies.keys())

    def get_method_info(self, method: ResonanceCondition) -> Dict[str, Union[str, float, bool]]:
        strategy = self.get_strategy(method)
        return {
            "name": strategy.get_name(),
            "description": strategy.get_description(),
            "radiation_coefficient": strategy.radiation_coefficient,
            "active": method == self._active_method,
        }


# Singleton instance for global use
condition_registry = ConditionRegistry()


_METHOD_MAP = {
    "rr1": ResonanceCondition.RR1,
    "reflection": ResonanceCondition.RR1,
    "reflection_pole": ResonanceCondition.RR1,
    "eq18": ResonanceCondition.EQ18,
    "reduced": ResonanceCondition.EQ18,
    "reduced_radiation": ResonanceCondition.EQ18,
}


def parse_condition(method_name: str) -> ResonanceCondition:
    """Resolve a condition name or alias."""
    method_name_lower = str(method_name).lower()
    if method_name_lower not in _METHOD_MAP:
        available = ", ".join(sorted(_METHOD_MAP.keys()))
        raise ValueError(f"Unknown method '{method_name}'. Available: {available}")
    return _METHOD_MAP[method_name_lower]


def get_condition(method: Union[ResonanceCondition, str, None] = None) -> BaseConditionStrategy:
    """Condition strategy for an enum member, a name, or the active default."""
    if isinstance(method, str):
        method = parse_condition(method)
    return condition_registry.get_strategy(method)


def configure_condition_from_string(method_name: str) -> None:
    """Configure the active condition form from its name."""
    condition_registry.set_active_method(parse_condition(method_name))
