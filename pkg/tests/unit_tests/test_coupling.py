"""
Unit tests for the junction coefficients, the scattering amplitudes and the boundary residuals.
"""

import math

import numpy as np
import pytest

from coupling import (
    CouplingParams,
    bc_residual,
    greens_boundary_values,
    identify_parameters,
    is_admissible_coupling,
    is_long_wave,
    lead_fields,
    low_energy_mismatch,
    point_amplitudes,
    point_flux_balance,
    tube_amplitudes,
    tube_flux_balance,
)
from errors import DomainError
from resonance import reflection

ANTENNA_RADIUS = 5e-4


class TestCouplingParams:
    """Self-adjoint junction coefficients."""

    def test_admissible_surface(self):
        """A and D real with B = 2 pi conj(C)."""
        C = 1.0 + 1.0j
        assert is_admissible_coupling(1.0, 2 * math.pi * C.conjugate(), C, -2.0)
        assert not is_admissible_coupling(1.0 + 0.5j, 2 * math.pi, 1.0, 0.0)
        assert not is_admissible_coupling(1.0, 2 * math.pi * C, C, 0.0)

    def test_rejects_inadmissible(self):
        """Constructing coefficients off the surface fails."""
        with pytest.raises(DomainError):
            CouplingParams(A=1.0, B=1.0, C=1.0, D=0.0)
        with pytest.raises(DomainError):
            CouplingParams(A=math.nan, B=0.0, C=0.0, D=0.0)

    def test_identified_antenna(self):
        """Identification gives A = 1/2a, D = -ln a and BC = 1/a."""
        a = 5e-4
        p = identify_parameters(a)
        assert p.A == pytest.approx(1000.0)
        assert p.D == pytest.approx(-math.log(a))
        assert p.coupling_strength == pytest.approx(1.0 / a)
        assert p.radius == a
        assert is_admissible_coupling(p.A, p.B, p.C, p.D)

    @pytest.mark.parametrize("a", [0.0, -1e-3, math.inf])
    def test_invalid_radius(self, a):
        """Radii must be positive and finite."""
        with pytest.raises(DomainError):
            identify_parameters(a)


class TestPointAmplitudes:
    """Plane-wave scattering by the point junction."""

    def test_flux_balance(self):
        """|D+|^2 - |D-|^2 = (8/pi) k BC."""
        p = identify_parameters(ANTENNA_RADIUS)
        for k in (1.0, 50.0, 150.0):
            scale = (8.0 / math.pi) * k * p.coupling_strength
            assert abs(point_flux_balance(p, k)) < 1e-10 * scale

    def test_reflection_bounded(self):
        """A coupled junction reflects less than the full flux."""
        p = identify_parameters(ANTENNA_RADIUS)
        for k in (1.0, 50.0, 150.0):
            assert point_amplitudes(p, k).reflection_probability < 1.0

    def test_decoupled_reflects_fully(self):
        """With B = C = 0 the lead is a closed end: |r| = 1 and t = 0."""
        amplitudes = point_amplitudes(CouplingParams.decoupled(A=3.0, D=1.0), 20.0)
        assert amplitudes.reflection_probability == pytest.approx(1.0, abs=1e-14)
        assert amplitudes.t == 0

    @pytest.mark.parametrize("k", [0.0, -2.0, math.nan])
    def test_invalid_wavenumber(self, k):
        with pytest.raises(DomainError):
            point_amplitudes(identify_parameters(ANTENNA_RADIUS), k)


class TestTubeAmplitudes:
    """Partial-wave scattering of a tube of radius a."""

    @pytest.mark.parametrize("order", range(6))
    def test_unitarity(self, order):
        """|r|^2 + |t|^2 = 1 for 50 values of ka in [1e-3, 2]."""
        a = 1.0
        for ka in np.logspace(-3, math.log10(2.0), 50):
            pair = tube_amplitudes(a, order, float(ka))
            assert abs(pair.reflection_probability + pair.transmission_probability - 1.0) < 1e-10

    def test_flux_balance_s_wave(self):
        """The s-wave flux balance vanishes by the Wronskian."""
        for ka in (0.01, 0.3, 2.0):
            assert abs(tube_flux_balance(1.0, 0, ka)) < 1e-10 * (32.0 * ka / math.pi)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_transmission_threshold_law(self, order):
        """|t|^2 grows like (ka)^(2l+1) at small ka."""
        ka = np.array([1e-4, 1e-3])
        t2 = [tube_amplitudes(1.0, order, float(z)).transmission_probability for z in ka]
        slope = np.diff(np.log(t2))[0] / np.diff(np.log(ka))[0]
        assert slope == pytest.approx(2 * order + 1, abs=0.05)

    def test_s_wave_transmission_small(self):
        """A thin antenna transmits little at low ka."""
        assert tube_amplitudes(1.0, 0, 1e-3).transmission_probability < 0.01


class TestLowEnergyMatching:
    """Point junction against the s-wave tube."""

    def test_mismatch_vanishes_at_low_energy(self):
        """|r_point - r_tube| < 1e-3 at ka = 1e-4."""
        a = ANTENNA_RADIUS
        assert low_energy_mismatch(a, 1e-4 / a) < 1e-3

    def test_mismatch_shrinks_with_ka(self):
        """The mismatch decreases monotonically as ka goes to 0."""
        a = ANTENNA_RADIUS
        values = [low_energy_mismatch(a, ka / a) for ka in np.logspace(-2, -4, 10)]
        assert all(later < earlier for earlier, later in zip(values, values[1:]))

    def test_long_wave_regime(self):
        assert is_long_wave(5e-4, 100.0)
        assert not is_long_wave(5e-4, 400.0)


class TestBoundaryValues:
    """Generalized boundary values and junction residuals."""

    def test_greens_boundary_values(self):
        """L0 = -b/2pi and L1 = b xi."""
        L0, L1 = greens_boundary_values(2.0 + 1.0j, 0.5)
        assert L0 == pytest.approx(-(2.0 + 1.0j) / (2 * math.pi))
        assert L1 == pytest.approx(1.0 + 0.5j)

    def test_scattering_solution_satisfies_junction(self, system):
        """The reflection amplitude from Z solves both junction equations."""
        k = 25.0
        r = reflection(system, k)
        z = system.z(k * k).real
        phi1, dphi1, L0, L1 = lead_fields(system.params, k, r, z)
        res1, res2 = bc_residual(system.params, phi1, dphi1, L0, L1)
        assert abs(res1) < 1e-9 * system.params.A
        assert abs(res2) < 1e-9 * abs(system.params.C)

    def test_wrong_amplitude_violates_junction(self, system):
        """Any other reflection amplitude leaves a residual."""
        k = 25.0
        z = system.z(k * k).real
        phi1, dphi1, L0, L1 = lead_fields(system.params, k, -1.0 + 0.0j, z)
        res1, _ = bc_residual(system.params, phi1, dphi1, L0, L1)
        assert abs(res1) > 1e-3
