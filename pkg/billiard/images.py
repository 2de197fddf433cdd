"""
Method-of-images evaluation of xi on the imaginary axis k = i kappa.

The Dirichlet Green's function of the rectangle at energy -kappa^2 is the signed lattice sum
of free kernels K0(kappa d)/2pi over the reflections of x0. Removing the logarithmic part of
the identity term leaves the boundary-free constant plus an exponentially convergent sum.
"""

import logging
import math

import numpy as np

import control
from billiard.green import free_space_xi
from billiard.rectangle import Point, Rectangle
from errors import DomainError
from specfun import bessel_k0

logger = logging.getLogger(__name__)

# K0(x) < 1e-14 beyond x ~ 31
_DECAY_ARGUMENT = 34.0


def _image_offsets(rect: Rectangle, x0: Point, kappa: float):
    """Signed displacements from x0 to every non-identity image within reach."""
    x, y = x0
    reach = _DECAY_ARGUMENT / kappa
    jx = int(math.ceil(reach / (2.0 * rect.c1))) + 1
    jy = int(math.ceil(reach / (2.0 * rect.c2))) + 1

    shifts_x = 2.0 * rect.c1 * np.arange(-jx, jx + 1)
    shifts_y = 2.0 * rect.c2 * np.arange(-jy, jy + 1)
    # Reflection x -> -x carries sign -1; the lattice translations carry +1
    dx = np.concatenate([shifts_x, shifts_x - 2.0 * x])
    sx = np.concatenate([np.ones_like(shifts_x), -np.ones_like(shifts_x)])
    dy = np.concatenate([shifts_y, shifts_y - 2.0 * y])
    sy = np.concatenate([np.ones_like(shifts_y), -np.ones_like(shifts_y)])

    distance = np.hypot(dx[:, None], dy[None, :])
    sign = sx[:, None] * sy[None, :]
    not_identity = distance > 0.0
    return distance[not_identity], sign[not_identity]


def xi_image_oracle(rect: Rectangle, x0: Point, kappa: float) -> float:
    """
    Regularized Green's function xi(x0; i kappa) by the image sum.

    Args:
        rect: Cavity geometry
        x0: Strictly interior point
        kappa: Positive decay constant in 1/m

    Returns:
        -(gamma + ln(kappa/2))/2pi plus the signed K0 image terms over 2pi
    """
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if not rect.is_interior(x0):
        raise DomainError(f"Antenna point {x0} is not strictly inside {rect.c1} x {rect.c2}")

    distance, sign = _image_offsets(rect, x0, kappa)
    argument = kappa * distance
    near = argument < _DECAY_ARGUMENT
    kernel = bessel_k0(argument[near])
    significant = kernel >= control.image_truncation
    image_sum = float(np.sum(sign[near][significant] * kernel[significant])) / (2.0 * np.pi)
    logger.debug(f"Image oracle at kappa={kappa}: {int(significant.sum())} images above truncation")
    return free_space_xi(kappa) + image_sum
