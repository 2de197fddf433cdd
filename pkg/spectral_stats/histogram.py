"""
Spacing histograms and comparisons with the Poisson law or a reference sample.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

import control
from errors import DomainError, SampleTooSmallError

logger = logging.getLogger(__name__)

POISSON_SMALL_S_FRACTION = 1.0 - math.exp(-control.small_s_threshold)


@dataclass(frozen=True, eq=False)
class SpacingHistogram:
    """Density of spacings on [0, s_max]; normalized over in-range samples."""

    bin_edges: np.ndarray
    densities: np.ndarray
    sample_count: int  # all spacings offered, including those beyond s_max
    in_range_count: int = 0

    @property
    def bin_widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.densities * self.bin_widths))

    def poisson_densities(self) -> np.ndarray:
        """Mean of e^{-s} over each bin."""
        lo, hi = self.bin_edges[:-1], self.bin_edges[1:]
        return (np.exp(-lo) - np.exp(-hi)) / (hi - lo)


@dataclass(frozen=True)
class PoissonComparison:
    ks_distance: float
    p_value: float
    small_s_fraction: float
    poisson_small_s_fraction: float
    sample_count: int


@dataclass(frozen=True)
class ReferenceComparison:
    ks_distance: float
    p_value: float
    sample_count: int
    reference_count: int


def build_histogram(spacings, bins: int = None, s_max: float = None) -> SpacingHistogram:
    """
    Histogram of spacings with densities normalized to unit mass over [0, s_max].

    Spacings beyond s_max carry no mass; sample_count counts every spacing and
    in_range_count the ones inside the bins.
    """
    bins = control.bins if bins is None else bins
    s_max = control.s_max if s_max is None else s_max
    if int(bins) != bins or bins < 1:
        raise DomainError(f"bins must be a positive integer, got {bins}")
    if not s_max > 0:
        raise DomainError(f"s_max must be positive, got {s_max}")
    s = np.asarray(spacings, dtype=float)
    edges = np.linspace(0.0, s_max, int(bins) + 1)
    counts, _ = np.histogram(s, bins=edges)
    in_range = int(counts.sum())
    if in_range == 0:
        return SpacingHistogram(bin_edges=edges, densities=np.zeros(int(bins)), sample_count=int(s.size))
    densities = counts / (in_range * np.diff(edges))
    return SpacingHistogram(bin_edges=edges, densities=densities, sample_count=int(s.size), in_range_count=in_range)


def poisson_compare(spacings) -> PoissonComparison:
    """
    KS distance to 1 - e^{-s} and the share of spacings below 0.25.

    Raises:
        SampleTooSmallError: For fewer than 50 spacings
    """
    s = np.asarray(spacings, dtype=float)
    if s.size < control.min_spacings_for_compare:
        raise SampleTooSmallError(f"Need at least {control.min_spacings_for_compare} spacings, got {s.size}")
    result = stats.kstest(s, "expon")
    small = float(np.mean(s < control.small_s_threshold))
    return PoissonComparison(
        ks_distance=float(result.statistic),
        p_value=float(result.pvalue),
        small_s_fraction=small,
        poisson_small_s_fraction=POISSON_SMALL_S_FRACTION,
        sample_count=int(s.size),
    )


def compare_to_reference(spacings, reference_spacings) -> ReferenceComparison:
    """Two-sample KS distance between computed and reference spacings."""
    s = np.asarray(spacings, dtype=float)
    ref = np.asarray(reference_spacings, dtype=float)
    if min(s.size, ref.size) < control.min_spacings_for_compare:
        raise SampleTooSmallError(
            f"Need at least {control.min_spacings_for_compare} spacings on both sides, got {s.size} and {ref.size}"
        )
    result = stats.ks_2samp(s, ref)
    return ReferenceComparison(
        ks_distance=float(result.statistic),
        p_value=float(result.pvalue),
        sample_count=int(s.size),
        reference_count=int(ref.size),
    )


def compare_histograms(h: SpacingHistogram, reference: SpacingHistogram) -> float:
    """L1 distance sum |p - p_ref| * width on shared bins."""
    if h.bin_edges.shape != reference.bin_edges.shape or not np.allclose(h.bin_edges, reference.bin_edges):
        raise DomainError("Histograms must share bin edges")
    return float(np.sum(np.abs(h.densities - reference.densities) * h.bin_widths))
