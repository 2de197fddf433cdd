"""
Special functions used by the tube amplitudes and the image-sum oracle.
"""

from .bessel import (
    EULER_GAMMA,
    MAX_ORDER,
    bessel_j,
    bessel_j_prime,
    bessel_k0,
    bessel_y,
    bessel_y_prime,
    hankel0_small_argument,
    hankel1,
    hankel1_prime,
    wronskian_jy,
)

__all__ = [
    "EULER_GAMMA",
    "MAX_ORDER",
    "bessel_j",
    "bessel_j_prime",
    "bessel_k0",
    "bessel_y",
    "bessel_y_prime",
    "hankel0_small_argument",
    "hankel1",
    "hankel1_prime",
    "wronskian_jy",
]
