"""
Real-argument Bessel and Hankel kernels.

Thin, domain-checked wrappers over scipy.special. Derivatives follow the
recurrence C'_v(z) = C_{v-1}(z) - (v/z) C_v(z) with C_{-1} = -C_1.
"""

from typing import Union

import numpy as np
from scipy import special

from errors import DomainError

ArrayLike = Union[float, np.ndarray]

EULER_GAMMA = 0.57721566490153286
MAX_ORDER = 10


def _check_order(order: int) -> int:
    if isinstance(order, bool) or int(order) != order:
        raise DomainError(f"Bessel order must be an integer, got {order!r}")
    order = int(order)
    if order < 0 or order > MAX_ORDER:
        raise DomainError(f"Bessel order must lie in [0, {MAX_ORDER}], got {order}")
    return order


def _check_argument(z: ArrayLike) -> np.ndarray:
    z_arr = np.asarray(z, dtype=float)
    if not np.all(z_arr > 0):
        raise DomainError(f"Bessel argument must be strictly positive, got {z}")
    return z_arr


def _as_input(value: np.ndarray, z: ArrayLike):
    return value.item() if np.ndim(z) == 0 else value


def _jv(order: int, z: np.ndarray) -> np.ndarray:
    if order < 0:
        return -special.jv(1, z)
    return special.jv(order, z)


def _yv(order: int, z: np.ndarray) -> np.ndarray:
    if order < 0:
        return -special.yv(1, z)
    return special.yv(order, z)


def bessel_j(order: int, z: ArrayLike) -> ArrayLike:
    """Bessel function of the first kind J_order(z) for z > 0."""
    order = _check_order(order)
    z_arr = _check_argument(z)
    return _as_input(_jv(order, z_arr), z)


def bessel_y(order: int, z: ArrayLike) -> ArrayLike:
    """Bessel function of the second kind Y_order(z) for z > 0."""
    order = _check_order(order)
    z_arr = _check_argument(z)
    return _as_input(_yv(order, z_arr), z)


def bessel_j_prime(order: int, z: ArrayLike) -> ArrayLike:
    """Derivative J'_order(z) by the downward recurrence."""
    order = _check_order(order)
    z_arr = _check_argument(z)
    value = _jv(order - 1, z_arr) - (order / z_arr) * _jv(order, z_arr)
    return _as_input(value, z)


def bessel_y_prime(order: int, z: ArrayLike) -> ArrayLike:
    """Derivative Y'_order(z) by the downward recurrence."""
    order = _check_order(order)
    z_arr = _check_argument(z)
    value = _yv(order - 1, z_arr) - (order / z_arr) * _yv(order, z_arr)
    return _as_input(value, z)


def hankel1(order: int, z: ArrayLike) -> ArrayLike:
    """Hankel function of the first kind H_order(z) = J_order(z) + i Y_order(z)."""
    order = _check_order(order)
    z_arr = _check_argument(z)
    return _as_input(_jv(order, z_arr) + 1j * _yv(order, z_arr), z)


def hankel1_prime(order: int, z: ArrayLike) -> ArrayLike:
    """Derivative H'_order(z) = H_{order-1}(z) - (order/z) H_order(z), with H_{-1} = -H_1."""
    order = _check_order(order)
    z_arr = _check_argument(z)
    h_order = _jv(order, z_arr) + 1j * _yv(order, z_arr)
    h_lower = _jv(order - 1, z_arr) + 1j * _yv(order - 1, z_arr)
    return _as_input(h_lower - (order / z_arr) * h_order, z)


def bessel_k0(x: ArrayLike) -> ArrayLike:
    """Modified Bessel function of the second kind K_0(x) for x > 0."""
    x_arr = _check_argument(x)
    return _as_input(special.k0(x_arr), x)


def hankel0_small_argument(z: ArrayLike) -> ArrayLike:
    """Leading small-argument form 1 + (2i/pi)(gamma + ln(z/2)) of H_0(z)."""
    z_arr = _check_argument(z)
    value = 1.0 + (2j / np.pi) * (EULER_GAMMA + np.log(z_arr / 2.0))
    return _as_input(np.asarray(value), z)


def wronskian_jy(order: int, z: ArrayLike) -> ArrayLike:
    """
    Wronskian J_v Y'_v - J'_v Y_v, which equals 2/(pi z).

    Args:
        order: Bessel order in [0, 10]
        z: Positive real argument

    Returns:
        Wronskian value, same shape as z
    """
    order = _check_order(order)
    z_arr = _check_argument(z)
    j = _jv(order, z_arr)
    y = _yv(order, z_arr)
    jp = _jv(order - 1, z_arr) - (order / z_arr) * j
    yp = _yv(order - 1, z_arr) - (order / z_arr) * y
    return _as_input(j * yp - jp * y, z)
