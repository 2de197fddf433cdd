"""
Exception hierarchy for the cavity-scatter system.

Every error is a ValueError so callers that only know about ValueError keep working.
"""

from typing import Optional


class CavityScatterError(ValueError):
    """Base class for all cavity-scatter errors."""


class DomainError(CavityScatterError):
    """Argument outside the domain of an operation."""


class PoleError(CavityScatterError):
    """Real energy coincides with a visible eigenvalue."""

    def __init__(self, message: str, eigenvalue: Optional[float] = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class CutoffError(CavityScatterError):
    """Basis cutoff too small for the requested energy."""


class ResourceError(CavityScatterError):
    """Mode count exceeds the configured maximum."""


class SingularError(CavityScatterError):
    """Amplitude denominator vanishes."""


class IsolationError(CavityScatterError):
    """Mode is too close to a visible neighbour for a first-order estimate."""


class SampleTooSmallError(CavityScatterError):
    """Not enough spacings for the requested statistic."""


class NumericalError(CavityScatterError):
    """A run was aborted for numerical reasons."""


class ConfigError(CavityScatterError):
    """Run configuration failed schema validation."""

    def __init__(self, message: str, key_path: str = ""):
        full = f"{key_path}: {message}" if key_path else message
        super().__init__(full)
        self.key_path = key_path


class UsageError(CavityScatterError):
    """Invalid command line."""


class OutputError(CavityScatterError):
    """Reading or writing run files failed."""
