"""
Regularized Dirichlet Green's function xi(x0; k) of a rectangle.

The series sum_n [w_n/(lambda_n - k^2) - 1/(4 pi n)] runs over the modes below the
cutoff LAMBDA, n being the rank in ascending-energy order. The analytic tail added
after truncation is

    H_N/4pi - ln(LAMBDA - k^2)/4pi - (N_loc(LAMBDA) - LAMBDA/4pi)/(LAMBDA - k^2) + (ln 2 - gamma)/2pi

with H_N the harmonic number of the stored count and N_loc the local counting
function sum_{lambda_n <= LAMBDA} w_n. Its leading expansion is k^2 |M|/(16 pi^2 N); the
remaining pieces absorb the boundary term of the rank counting, the staircase step at
the cutoff, and the constant (gamma + ln(pi/|M|))/4pi by which the term-by-term limit
differs from the Green's function value. XiConvention.SERIES keeps that constant.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Union

import numpy as np

import control
from billiard.rectangle import ModeIndex, ModeTable, Point, Rectangle, enumerate_modes, mode_weights
from errors import CutoffError, DomainError, PoleError
from specfun import EULER_GAMMA

logger = logging.getLogger(__name__)

SAFETY_FACTOR = 25.0
_GREEN_CONSTANT = (math.log(2.0) - EULER_GAMMA) / (2.0 * math.pi)


class XiConvention(Enum):
    """Normalization of the regularized Green's function."""

    GREEN = "green"  # Matches lim [G + ln|x - x0|/2pi]
    SERIES = "series"  # Term-by-term limit of the counterterm series


@dataclass(frozen=True)
class VisibleLevel:
    """Distinct visible eigenvalue; degenerate modes are merged."""

    eigenvalue: float
    weight: float
    mode: ModeIndex
    members: np.ndarray = field(repr=False)


def series_offset(rect: Rectangle) -> float:
    """Constant (gamma + ln(pi/|M|))/4pi separating the term-by-term limit from xi."""
    return (EULER_GAMMA + math.log(math.pi / rect.area)) / (4.0 * math.pi)


def free_space_xi(kappa: float) -> float:
    """Boundary-free value -(gamma + ln(kappa/2))/2pi at k = i kappa."""
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    return -(EULER_GAMMA + math.log(kappa / 2.0)) / (2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class GreenEvaluator:
    """
    Precomputed mode data for xi evaluation at one antenna point.

    Immutable after construction; every evaluation is pure.
    """

    rect: Rectangle
    x0: Point
    cutoff: float
    table: ModeTable
    weights: np.ndarray
    visible: np.ndarray
    convention: XiConvention = XiConvention.GREEN
    counterterm_sum: float = 0.0
    staircase: float = 0.0

    @classmethod
    def build(
        cls,
        rect: Rectangle,
        x0: Point,
        cutoff: float,
        max_modes: Optional[int] = None,
        convention: XiConvention = XiConvention.GREEN,
    ) -> "GreenEvaluator":
        """
        Enumerate the basis below `cutoff` and tabulate |phi_n(x0)|^2.

        Raises:
            DomainError: If x0 is not strictly interior
            ResourceError: If the basis is larger than max_modes
        """
        x0 = (float(x0[0]), float(x0[1]))
        if not rect.is_interior(x0):
            raise DomainError(f"Antenna point {x0} is not strictly inside {rect.c1} x {rect.c2}")
        table = enumerate_modes(rect, cutoff, max_modes)
        weights = mode_weights(table, x0)
        visible = weights > control.visibility_threshold * 4.0 / rect.area
        ranks = np.arange(1, len(table) + 1, dtype=float)
        counterterm_sum = float(np.sum(1.0 / (4.0 * np.pi * ranks)))
        staircase = float(np.sum(weights) - cutoff / (4.0 * np.pi))
        logger.debug(f"Green evaluator at {x0}: {len(table)} modes, {int(visible.sum())} visible")
        return cls(
            rect=rect,
            x0=x0,
            cutoff=float(cutoff),
            table=table,
            weights=weights,
            visible=visible,
            convention=convention,
            counterterm_sum=counterterm_sum,
            staircase=staircase,
        )

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.table.eigenvalues

    @property
    def mode_count(self) -> int:
        return len(self.table)

    @property
    def max_energy(self) -> float:
        """Largest |k^2| the cutoff supports."""
        return self.cutoff / SAFETY_FACTOR

    def _check_energy(self, ksq: complex) -> None:
        if abs(ksq) > self.max_energy:
            raise CutoffError(
                f"|k^2| = {abs(ksq):.6g} exceeds cutoff/{SAFETY_FACTOR:g} = {self.max_energy:.6g}; enlarge the basis"
            )

    def _check_poles(self, ksq: complex, keep: np.ndarray) -> None:
        lam = self.eigenvalues
        close = (np.abs(lam - ksq) < control.pole_tolerance * lam) & keep
        if np.any(close):
            rank = int(np.argmax(close)) + 1
            mode = self.table.mode(rank)
            raise PoleError(
                f"k^2 = {ksq} sits on the visible eigenvalue {lam[rank - 1]:.12g} of mode ({mode.n}, {mode.m})",
                eigenvalue=float(lam[rank - 1]),
            )

    def _pole_mask(self, exclude) -> np.ndarray:
        keep = self.visible.copy()
        if exclude is not None:
            keep[np.asarray(exclude)] = False
        return keep

    def tail_correction(self, ksq: complex) -> complex:
        """Analytic remainder added to the truncated series."""
        remainder = self.cutoff - ksq
        tail = (
            self.counterterm_sum
            - np.log(remainder) / (4.0 * np.pi)
            - self.staircase / remainder
            + _GREEN_CONSTANT
        )
        if self.convention is XiConvention.SERIES:
            tail += series_offset(self.rect)
        return tail

    def tail_bound(self, ksq: complex) -> float:
        """Declared size of the truncation remainder."""
        n = self.mode_count
        smooth = abs(ksq) * self.rect.area / (16.0 * np.pi**2 * n)
        return float(smooth + abs(self.staircase) / abs(self.cutoff - ksq))

    def xi(self, ksq: complex, exclude=None) -> complex:
        """
        Evaluate xi(x0; k) at complex energy ksq.

        Args:
            ksq: Complex energy k^2 in 1/m^2
            exclude: Indices (0-based) or boolean mask of terms whose pole parts are dropped;
                their counterterms stay in the sum

        Returns:
            Complex xi; the imaginary part is exactly 0 for real ksq

        Raises:
            CutoffError: If |ksq| exceeds cutoff/25
            PoleError: If ksq coincides with a visible, non-excluded eigenvalue
        """
        ksq = complex(ksq)
        self._check_energy(ksq)
        keep = self._pole_mask(exclude)
        self._check_poles(ksq, keep)

        if ksq.imag == 0.0:
            energy = ksq.real
            terms = self._pole_terms(energy, exclude, power=1)
            total = float(np.sum(terms)) - self.counterterm_sum + float(np.real(self.tail_correction(energy)))
            return complex(total, 0.0)

        terms = self._pole_terms(ksq, exclude, power=1)
        return complex(np.sum(terms) - self.counterterm_sum + self.tail_correction(ksq))

    def _pole_terms(self, ksq, exclude, power: int) -> np.ndarray:
        denom = (self.eigenvalues - ksq) ** power
        terms = np.divide(self.weights, denom, out=np.zeros(denom.shape, dtype=denom.dtype), where=self.visible)
        if exclude is not None:
            terms[np.asarray(exclude)] = 0.0
        return terms

    def xi_derivative(self, ksq: complex, exclude=None) -> complex:
        """d xi / d(k^2): term-wise derivative plus the derivative of the tail."""
        ksq = complex(ksq)
        self._check_energy(ksq)
        terms = self._pole_terms(ksq, exclude, power=2)
        remainder = self.cutoff - ksq
        return complex(np.sum(terms) + 1.0 / (4.0 * np.pi * remainder) - self.staircase / remainder**2)

    def xi_on_grid(self, energies: np.ndarray, chunk: int = 2_000_000) -> np.ndarray:
        """
        Vectorized xi on an array of real energies; exact poles give +/-inf instead of raising.
        """
        energies = np.asarray(energies, dtype=float)
        if energies.size and np.max(np.abs(energies)) > self.max_energy:
            raise CutoffError(f"Energy grid reaches {np.max(np.abs(energies)):.6g} beyond cutoff/{SAFETY_FACTOR:g}")
        out = np.empty(energies.size, dtype=float)
        step = max(1, chunk // max(1, self.mode_count))
        lam = self.eigenvalues[None, :]
        w = self.weights[None, :]
        nonzero = self.visible[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            for start in range(0, energies.size, step):
                block = energies[start : start + step]
                denom = lam - block[:, None]
                terms = np.divide(w, denom, out=np.zeros(denom.shape), where=nonzero)
                out[start : start + step] = np.sum(terms, axis=1)
        remainder = self.cutoff - energies
        tail = self.counterterm_sum - np.log(remainder) / (4.0 * np.pi) - self.staircase / remainder + _GREEN_CONSTANT
        if self.convention is XiConvention.SERIES:
            tail = tail + series_offset(self.rect)
        return out - self.counterterm_sum + tail

    def visible_levels(self, k_min: float = 0.0, k_max: float = math.inf) -> List[VisibleLevel]:
        """Distinct visible eigenvalues with sqrt(lambda) in [k_min, k_max]."""
        lam = self.eigenvalues
        idx = np.flatnonzero(self.visible & (lam >= k_min**2) & (lam <= k_max**2))
        if idx.size == 0:
            return []
        values = lam[idx]
        breaks = np.flatnonzero(np.diff(values) > control.pole_tolerance * values[1:]) + 1
        return [self._merge(group) for group in np.split(idx, breaks)]

    def neighbour_gap(self, energy: float) -> float:
        """Distance from `energy` to the nearest distinct visible eigenvalue."""
        lam = self.eigenvalues[self.visible]
        distance = np.abs(lam - energy)
        distinct = distance > control.pole_tolerance * max(abs(energy), 1.0)
        if not np.any(distinct):
            return math.inf
        return float(np.min(distance[distinct]))

    def _merge(self, group: np.ndarray) -> VisibleLevel:
        members = np.asarray(group, dtype=np.int64)
        return VisibleLevel(
            eigenvalue=float(self.eigenvalues[members[0]]),
            weight=float(np.sum(self.weights[members])),
            mode=self.table.mode(int(members[0]) + 1),
            members=members,
        )


def xi_eval(ev: GreenEvaluator, ksq: Union[complex, float]) -> complex:
    """Regularized Green's function xi(x0; k) at energy ksq."""
    return ev.xi(ksq)


def xi_derivative(ev: GreenEvaluator, ksq: Union[complex, float], exclude=None) -> complex:
    return ev.xi_derivative(ksq, exclude)


def boundary_deviation(ev: GreenEvaluator, kappa: float) -> float:
    """xi(x0; i kappa) minus its boundary-free value; vanishes as kappa grows."""
    return ev.xi(-(kappa**2)).real - free_space_xi(kappa)
