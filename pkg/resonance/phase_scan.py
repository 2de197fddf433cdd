"""
Real-axis resonance oracle from the reflection phase.

The phase theta(k) = arg r(k) rises by 2pi across each resonance. The delay dtheta/dk peaks
at Re k with height about 2/|Im k|; its half-maximum width is 2|Im k|.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.signal import find_peaks, peak_widths

from errors import DomainError
from resonance.system import ResonatorSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhasePeak:
    k_center: float
    width: float  # half the full width at half maximum, comparable to |Im k|
    resolved: bool = True


def _mean_spacing(sys: ResonatorSystem, k: float) -> float:
    """Mean wavenumber spacing 2pi/(|M| k) of the closed cavity."""
    return 2.0 * math.pi / (sys.rect.area * k)


def _grid(sys: ResonatorSystem, band: Sequence[float], grid_step: float) -> np.ndarray:
    k_min, k_max = float(band[0]), float(band[1])
    if not (0.0 < k_min < k_max):
        raise DomainError(f"Phase scan band must satisfy 0 < k_min < k_max, got ({k_min}, {k_max})")
    limit = 0.1 * _mean_spacing(sys, k_max)
    if not (0.0 < grid_step < limit):
        raise DomainError(f"grid_step {grid_step} must lie below a tenth of the mean spacing ({limit:.4g})")
    count = int(math.floor((k_max - k_min) / grid_step)) + 1
    return k_min + grid_step * np.arange(count)


def reflection_on_grid(sys: ResonatorSystem, k: np.ndarray) -> np.ndarray:
    """Vectorized reflection amplitude on real wavenumbers; exact poles give the Z -> infinity limit."""
    k = np.asarray(k, dtype=float)
    z = sys.evaluator.xi_on_grid(k * k) - sys.log_radius_term
    ka = k * sys.a
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse = np.where(np.abs(z) > 1.0, 1.0 / z, 0.0)
        large = -(np.pi * (1.0 - 2j * ka) - inverse) / (np.pi * (1.0 + 2j * ka) - inverse)
        small = -(np.pi * z * (1.0 - 2j * ka) - 1.0) / (np.pi * z * (1.0 + 2j * ka) - 1.0)
    return np.where(np.abs(z) > 1.0, large, small)


def reflection_phase(sys: ResonatorSystem, k: np.ndarray) -> np.ndarray:
    """Unwrapped arg r(k) on an increasing real grid."""
    return np.unwrap(np.angle(reflection_on_grid(sys, k)))


def phase_delay(sys: ResonatorSystem, band: Sequence[float], grid_step: float) -> Tuple[np.ndarray, np.ndarray]:
    """Grid and dtheta/dk."""
    k = _grid(sys, band, grid_step)
    theta = reflection_phase(sys, k)
    return k, np.gradient(theta, k)


def phase_winding(sys: ResonatorSystem, band: Sequence[float], grid_step: float) -> float:
    """Total change of the unwrapped reflection phase across the band."""
    k = _grid(sys, band, grid_step)
    theta = reflection_phase(sys, k)
    return float(theta[-1] - theta[0])


def _refine(k: np.ndarray, tau: np.ndarray, i: int) -> float:
    """Vertex of the parabola through the three samples around a maximum."""
    if i == 0 or i == len(k) - 1:
        return float(k[i])
    y0, y1, y2 = tau[i - 1], tau[i], tau[i + 1]
    curvature = y0 - 2.0 * y1 + y2
    if curvature >= 0:
        return float(k[i])
    offset = 0.5 * (y0 - y2) / curvature
    return float(k[i] + offset * (k[1] - k[0]))


def phase_scan_oracle(sys: ResonatorSystem, band: Sequence[float], grid_step: float) -> List[PhasePeak]:
    """
    Resonance centers and widths from the peaks of the reflection phase delay.

    Args:
        sys: Scattering model
        band: (k_min, k_max) in 1/m, k_min > 0
        grid_step: Grid spacing in 1/m, below a tenth of the mean level spacing

    Returns:
        One PhasePeak per delay maximum above 2/spacing, sorted by k
    """
    k, tau = phase_delay(sys, band, grid_step)
    threshold = 2.0 / _mean_spacing(sys, float(band[1]))
    indices, _ = find_peaks(tau, height=threshold)
    if indices.size == 0:
        return []

    full_widths, _, _, _ = peak_widths(tau, indices, rel_height=0.5)
    peaks: List[PhasePeak] = []
    for j, i in enumerate(indices):
        resolved = True
        for neighbour in (j - 1, j + 1):
            if 0 <= neighbour < indices.size:
                lo, hi = sorted((i, indices[neighbour]))
                valley = float(np.min(tau[lo : hi + 1]))
                if valley > 0.5 * min(tau[i], tau[indices[neighbour]]):
                    resolved = False
        center = _refine(k, tau, int(i))
        if not resolved:
            logger.warning(f"Unresolved phase-delay peak near k = {center:.6g}; neighbouring resonances merge")
        peaks.append(PhasePeak(k_center=center, width=0.5 * float(full_widths[j]) * grid_step, resolved=resolved))
    return peaks
