"""
Boundary-condition coefficients of the lead-to-plane junction.

The lead boundary values (phi1, phi1') and the generalized boundary values (L0, L1) of the
planar field are tied by

    phi1' = A phi1 + B L0
    L1    = C phi1 + D L0

Self-adjointness needs A and D real with B = 2 pi conj(C).
"""

import math
from dataclasses import dataclass
from typing import Optional

from errors import DomainError

_CONSTRAINT_TOLERANCE = 1e-12


def is_admissible_coupling(A: complex, B: complex, C: complex, D: complex) -> bool:
    """True when (A, B, C, D) lies on the self-adjoint parameter surface."""
    if abs(complex(A).imag) > 0.0 or abs(complex(D).imag) > 0.0:
        return False
    B = complex(B)
    expected = 2.0 * math.pi * complex(C).conjugate()
    return abs(B - expected) <= _CONSTRAINT_TOLERANCE * max(1.0, abs(B))


@dataclass(frozen=True)
class CouplingParams:
    """
    Real coefficients of the junction condition.

    Only the time-reversal-invariant branch B = 2 pi C is constructible.
    """

    A: float
    B: float
    C: float
    D: float
    radius: Optional[float] = None

    def __post_init__(self):
        for name in ("A", "B", "C", "D"):
            value = getattr(self, name)
            if isinstance(value, complex) or not math.isfinite(value):
                raise DomainError(f"Coupling coefficient {name} must be a finite real number, got {value!r}")
        if not is_admissible_coupling(self.A, self.B, self.C, self.D):
            raise DomainError(f"Coupling violates B = 2 pi C: B={self.B}, C={self.C}")

    @property
    def coupling_strength(self) -> float:
        """Product BC, equal to 1/a for an identified antenna."""
        return self.B * self.C

    @classmethod
    def decoupled(cls, A: float = 0.0, D: float = 0.0) -> "CouplingParams":
        return cls(A=A, B=0.0, C=0.0, D=D)


def identify_parameters(a: float) -> CouplingParams:
    """
    Coefficients reproducing the s-wave scattering of an antenna of radius a.

    Args:
        a: Antenna radius in meters

    Returns:
        CouplingParams with A = 1/(2a), D = -ln a, B = sqrt(2 pi/a), C = B/2pi

    Raises:
        DomainError: If a is not positive
    """
    if not (a > 0 and math.isfinite(a)):
        raise DomainError(f"Antenna radius must be positive, got {a}")
    B = math.sqrt(2.0 * math.pi / a)
    return CouplingParams(A=1.0 / (2.0 * a), B=B, C=B / (2.0 * math.pi), D=-math.log(a), radius=a)
