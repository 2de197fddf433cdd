"""
Wavenumber / frequency conversion for electromagnetic cavity modes.
"""

import math
from typing import Union

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from errors import DomainError

ArrayLike = Union[float, np.ndarray]

GHZ = 1e9


def freq_from_k(k: ArrayLike) -> ArrayLike:
    """Frequency c k/2pi in GHz for wavenumbers in 1/m."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 0):
        raise DomainError(f"Wavenumber must be non-negative, got {k}")
    value = SPEED_OF_LIGHT * k_arr / (2.0 * math.pi) / GHZ
    return value.item() if np.ndim(k) == 0 else value


def k_from_freq(f_GHz: ArrayLike) -> ArrayLike:
    """Wavenumber in 1/m for a frequency in GHz."""
    f_arr = np.asarray(f_GHz, dtype=float)
    if np.any(f_arr < 0):
        raise DomainError(f"Frequency must be non-negative, got {f_GHz}")
    value = 2.0 * math.pi * f_arr * GHZ / SPEED_OF_LIGHT
    return value.item() if np.ndim(f_GHz) == 0 else value
