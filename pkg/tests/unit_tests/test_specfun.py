"""
Unit tests for the Bessel and Hankel kernels.
"""

import math

import numpy as np
import pytest

from errors import DomainError
from specfun import (
    EULER_GAMMA,
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
from tests.reference_functions import (
    ref_bessel_j,
    ref_bessel_k0,
    ref_bessel_y,
    ref_hankel1,
    ref_hankel1_prime,
    ref_k0_from_hankel,
)

SAMPLE_POINTS = [0.01, 0.5, 3.7, 25.0]


def close(value, reference, tol=1e-12):
    return abs(value - reference) <= tol * max(1.0, abs(reference))


class TestAgainstReference:
    """Compare with 50-digit mpmath values."""

    @pytest.mark.parametrize("order", range(6))
    def test_bessel_j_and_y(self, order):
        """J and Y agree with the reference at small, moderate and large arguments."""
        for z in SAMPLE_POINTS:
            assert close(bessel_j(order, z), ref_bessel_j(order, z))
            assert close(bessel_y(order, z), ref_bessel_y(order, z))

    @pytest.mark.parametrize("order", range(6))
    def test_hankel_and_derivative(self, order):
        """H and H' agree with the reference."""
        for z in SAMPLE_POINTS:
            assert close(hankel1(order, z), ref_hankel1(order, z))
            assert close(hankel1_prime(order, z), ref_hankel1_prime(order, z), tol=1e-11)

    def test_k0(self):
        """K0 agrees with the reference across the image-sum range."""
        for x in [1e-3, 0.1, 2.0, 20.0, 30.0]:
            assert abs(bessel_k0(x) - ref_bessel_k0(x)) <= 1e-12 * ref_bessel_k0(x)

    def test_k0_is_hankel_on_imaginary_axis(self):
        """K0(x) = (i pi/2) H0(i x): the continuation is real and matches K0."""
        for x in [1e-3, 0.1, 2.0, 20.0]:
            continued = ref_k0_from_hankel(x)
            assert abs(continued.imag) < 1e-30
            assert abs(bessel_k0(x) - continued.real) <= 1e-12 * continued.real


class TestIdentities:
    """Closed-form relations between the kernels."""

    def test_wronskian(self):
        """J Y' - J' Y = 2/(pi z) for orders 0..5 on 30 log-spaced arguments."""
        z = np.logspace(-3, 2, 30)
        for order in range(6):
            w = wronskian_jy(order, z)
            assert np.max(np.abs(w - 2.0 / (np.pi * z))) < 1e-10

    def test_derivatives_match_recurrence(self):
        """J' and Y' follow C'_v = C_{v-1} - (v/z) C_v, with J0' = -J1."""
        z = 1.7
        assert bessel_j_prime(0, z) == pytest.approx(-bessel_j(1, z), rel=1e-14)
        assert bessel_y_prime(0, z) == pytest.approx(-bessel_y(1, z), rel=1e-14)
        assert bessel_j_prime(3, z) == pytest.approx(bessel_j(2, z) - 3.0 / z * bessel_j(3, z), rel=1e-14)

    def test_hankel_is_j_plus_iy(self):
        """H = J + iY."""
        z = 4.2
        h = hankel1(2, z)
        assert h.real == pytest.approx(bessel_j(2, z), rel=1e-15)
        assert h.imag == pytest.approx(bessel_y(2, z), rel=1e-15)

    @pytest.mark.parametrize("z", [1e-3, 1e-2])
    def test_small_argument_form(self, z):
        """The small-argument form deviates from H0 by O(z^2 ln z)."""
        form = hankel0_small_argument(z)
        assert isinstance(form, complex)
        assert form == pytest.approx(1.0 + (2j / math.pi) * (EULER_GAMMA + math.log(z / 2.0)))
        assert abs(hankel1(0, z) - form) < z**2 * (1.0 + abs(math.log(z)))

    def test_small_argument_form_on_arrays(self):
        z = np.array([1e-3, 1e-2])
        form = hankel0_small_argument(z)
        assert form.shape == (2,)
        assert form[1] == pytest.approx(hankel0_small_argument(1e-2))


class TestDomain:
    """Arguments outside the supported domain."""

    def test_array_input(self):
        """Array arguments give arrays of the same shape."""
        z = np.array([0.5, 1.0, 2.0])
        assert bessel_j(1, z).shape == (3,)
        assert isinstance(bessel_j(1, 0.5), float)

    @pytest.mark.parametrize("order", [-1, 11, 1.5, True])
    def test_bad_order(self, order):
        """Orders outside 0..10 or non-integer orders are rejected."""
        with pytest.raises(DomainError):
            bessel_j(order, 1.0)

    @pytest.mark.parametrize("z", [0.0, -1.0])
    def test_non_positive_argument(self, z):
        """Arguments must be strictly positive."""
        with pytest.raises(DomainError):
            hankel1(0, z)
        with pytest.raises(DomainError):
            bessel_k0(z)

    def test_domain_error_is_value_error(self):
        """DomainError stays catchable as ValueError."""
        with pytest.raises(ValueError):
            bessel_y(0, -2.0)
