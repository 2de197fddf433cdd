"""
Rectangle billiard: Dirichlet eigenbasis, Weyl counting and the regularized Green's function.
"""

from .green import (
    GreenEvaluator,
    VisibleLevel,
    XiConvention,
    boundary_deviation,
    free_space_xi,
    series_offset,
    xi_derivative,
    xi_eval,
)
from .images import xi_image_oracle
from .rectangle import (
    ModeIndex,
    ModeTable,
    Point,
    Rectangle,
    eigenfunction,
    eigenvalue,
    enumerate_modes,
    mode_weights,
    weyl_mean_counting,
)

__all__ = [
    "GreenEvaluator",
    "ModeIndex",
    "ModeTable",
    "Point",
    "Rectangle",
    "VisibleLevel",
    "XiConvention",
    "boundary_deviation",
    "eigenfunction",
    "eigenvalue",
    "enumerate_modes",
    "free_space_xi",
    "mode_weights",
    "series_offset",
    "weyl_mean_counting",
    "xi_derivative",
    "xi_eval",
    "xi_image_oracle",
]
