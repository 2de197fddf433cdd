"""
Rectangle Dirichlet eigenbasis and Weyl counting.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

import control
from errors import DomainError, ResourceError

logger = logging.getLogger(__name__)

Point = Tuple[float, float]


@dataclass(frozen=True)
class Rectangle:
    """Cavity [0, c1] x [0, c2], side lengths in meters."""

    c1: float
    c2: float

    def __post_init__(self):
        if not (self.c1 > 0 and self.c2 > 0) or not (math.isfinite(self.c1) and math.isfinite(self.c2)):
            raise DomainError(f"Rectangle sides must be positive and finite, got ({self.c1}, {self.c2})")

    @property
    def area(self) -> float:
        return self.c1 * self.c2

    @property
    def perimeter(self) -> float:
        return 2.0 * (self.c1 + self.c2)

    def contains(self, pt: Point) -> bool:
        """True for points of the closed rectangle."""
        x, y = pt
        return 0.0 <= x <= self.c1 and 0.0 <= y <= self.c2

    def is_interior(self, pt: Point) -> bool:
        x, y = pt
        return 0.0 < x < self.c1 and 0.0 < y < self.c2

    def wall_distance(self, pt: Point) -> float:
        x, y = pt
        return min(x, self.c1 - x, y, self.c2 - y)

    def scaled(self, factor: float) -> "Rectangle":
        """Same rectangle in a length unit `factor` times smaller."""
        return Rectangle(self.c1 * factor, self.c2 * factor)


@dataclass(frozen=True, order=True)
class ModeIndex:
    n: int
    m: int

    def __post_init__(self):
        if int(self.n) != self.n or int(self.m) != self.m or self.n < 1 or self.m < 1:
            raise DomainError(f"Mode indices must be positive integers, got ({self.n}, {self.m})")


@dataclass(frozen=True)
class ModeTable:
    """Modes with eigenvalue <= cutoff, sorted by eigenvalue then (n, m)."""

    rect: Rectangle
    cutoff: float
    n: np.ndarray
    m: np.ndarray
    eigenvalues: np.ndarray

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    def mode(self, rank: int) -> ModeIndex:
        """Mode at 1-based rank."""
        return ModeIndex(int(self.n[rank - 1]), int(self.m[rank - 1]))


def eigenvalue(rect: Rectangle, idx: ModeIndex) -> float:
    """Dirichlet eigenvalue n^2 pi^2/c1^2 + m^2 pi^2/c2^2 in 1/m^2."""
    return (idx.n * math.pi / rect.c1) ** 2 + (idx.m * math.pi / rect.c2) ** 2


def eigenfunction(rect: Rectangle, idx: ModeIndex, pt: Point) -> float:
    """
    Normalized eigenfunction (2/sqrt(c1 c2)) sin(n pi x/c1) sin(m pi y/c2).

    Raises:
        DomainError: If pt lies outside the closed rectangle
    """
    if not rect.contains(pt):
        raise DomainError(f"Point {pt} lies outside the rectangle {rect.c1} x {rect.c2}")
    x, y = pt
    amplitude = 2.0 / math.sqrt(rect.area)
    return amplitude * math.sin(math.pi * idx.n * (x / rect.c1)) * math.sin(math.pi * idx.m * (y / rect.c2))


def mode_weights(table: ModeTable, pt: Point) -> np.ndarray:
    """|phi_n(pt)|^2 for every mode of the table."""
    rect = table.rect
    sx = np.sin(np.pi * table.n * (pt[0] / rect.c1))
    sy = np.sin(np.pi * table.m * (pt[1] / rect.c2))
    return (4.0 / rect.area) * (sx * sy) ** 2


def weyl_mean_counting(rect: Rectangle, energy: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Smooth counting function |M|E/4pi - P sqrt(E)/4pi + 1/4."""
    e = np.asarray(energy, dtype=float)
    if not np.all(e > 0):
        raise DomainError(f"Energy must be positive for Weyl counting, got {energy}")
    value = rect.area * e / (4.0 * np.pi) - rect.perimeter * np.sqrt(e) / (4.0 * np.pi) + 0.25
    return value.item() if np.ndim(energy) == 0 else value


def enumerate_modes(rect: Rectangle, cutoff: float, max_modes: int = None) -> ModeTable:
    """
    Enumerate all modes with eigenvalue <= cutoff.

    Args:
        rect: Cavity geometry
        cutoff: Energy cutoff LAMBDA in 1/m^2, must exceed the ground state
        max_modes: Upper bound on the mode count (control.max_modes by default)

    Returns:
        ModeTable sorted ascending by eigenvalue, ties broken by (n, m)

    Raises:
        DomainError: If cutoff does not exceed the ground state
        ResourceError: If the mode count exceeds max_modes
    """
    if max_modes is None:
        max_modes = control.max_modes
    ground = eigenvalue(rect, ModeIndex(1, 1))
    if not cutoff > ground:
        raise DomainError(f"Cutoff {cutoff} must exceed the ground state {ground}")

    estimate = weyl_mean_counting(rect, cutoff)
    if estimate > 1.05 * max_modes + 10:
        raise ResourceError(f"About {estimate:.0f} modes below {cutoff:.6g} exceed the maximum of {max_modes}")

    n_max = int(math.floor(rect.c1 * math.sqrt(cutoff) / math.pi)) + 1
    m_max = int(math.floor(rect.c2 * math.sqrt(cutoff) / math.pi)) + 1
    n_values = np.arange(1, n_max + 1)
    m_values = np.arange(1, m_max + 1)
    n_grid, m_grid = np.meshgrid(n_values, m_values, indexing="ij")
    lam = (n_grid * (np.pi / rect.c1)) ** 2 + (m_grid * (np.pi / rect.c2)) ** 2
    keep = lam <= cutoff

    n_kept = n_grid[keep]
    m_kept = m_grid[keep]
    lam_kept = lam[keep]
    if lam_kept.size > max_modes:
        raise ResourceError(f"{lam_kept.size} modes below {cutoff:.6g} exceed the maximum of {max_modes}")

    order = np.lexsort((m_kept, n_kept, lam_kept))
    logger.debug(f"Enumerated {lam_kept.size} modes below {cutoff:.6g} for {rect.c1} x {rect.c2}")
    return ModeTable(
        rect=rect,
        cutoff=float(cutoff),
        n=n_kept[order].astype(np.int64),
        m=m_kept[order].astype(np.int64),
        eigenvalues=lam_kept[order],
    )
