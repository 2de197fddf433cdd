"""
Unit tests for the reflection amplitude, the resonance search and its oracles.
"""

import math

import numpy as np
import pytest

from billiard import ModeIndex
from errors import CutoffError, DomainError, IsolationError, PoleError
from registries.condition_registry import ResonanceCondition
from resonance import (
    NewtonOptions,
    Resonance,
    ResonatorSystem,
    condition_derivative,
    condition_residual,
    find_resonances,
    perturbative_estimate,
    phase_scan_oracle,
    phase_winding,
    reflection,
    reflection_on_grid,
)
from resonance.root_finder import _deduplicate, _newton

BAND = (15.0, 60.0)


@pytest.fixture
def resonances(system):
    return find_resonances(system, BAND)


def nearest_root(resonances, energy):
    """Root whose complex energy lies closest to `energy`."""
    return min(resonances, key=lambda res: abs(res.energy - energy))


def isolated(resonances, factor=100.0):
    """Resonances whose nearest neighbour lies further than `factor` widths away."""
    found = []
    for res in resonances:
        others = [abs(o.k.real - res.k.real) for o in resonances if o is not res]
        if not others or min(others) > factor * abs(res.k.imag):
            found.append(res)
    return found


class TestReflection:
    """Closed-cavity reflection amplitude on the real axis."""

    def test_unit_modulus(self, system):
        """All incident flux returns: |r| = 1."""
        for k in (5.0, 25.0, 47.3, 99.0):
            assert abs(reflection(system, k)) == pytest.approx(1.0, abs=1e-12)

    def test_grid_matches_scalar(self, system):
        """The vectorized amplitude equals the scalar one."""
        k = np.array([5.0, 25.0, 47.3])
        grid = reflection_on_grid(system, k)
        for value, kk in zip(grid, k):
            assert value == pytest.approx(reflection(system, float(kk)), abs=1e-12)

    def test_pole_on_eigenvalue(self, system):
        """A wavenumber on a visible eigenvalue raises PoleError."""
        with pytest.raises(PoleError):
            reflection(system, math.sqrt(float(system.evaluator.eigenvalues[0])))

    @pytest.mark.parametrize("k", [0.0, -3.0, 20.0 + 1.0j])
    def test_rejects_non_positive_or_complex(self, system, k):
        with pytest.raises(DomainError):
            reflection(system, k)


class TestConditionFunction:
    """Resonance condition F(k) and its derivative."""

    def test_derivative_matches_finite_difference(self, system):
        """Analytic dF/dk agrees with a complex central difference."""
        k, h = 30.0 - 0.01j, 1e-6
        numeric = (condition_residual(system, k + h) - condition_residual(system, k - h)) / (2 * h)
        assert condition_derivative(system, k) == pytest.approx(numeric, rel=1e-5)

    def test_requires_positive_real_part(self, system):
        with pytest.raises(DomainError):
            condition_residual(system, -1.0 - 0.1j)


class TestFindResonances:
    """Damped Newton search seeded by the visible eigenvalues."""

    def test_roots_are_accepted_zeros(self, system, resonances):
        """Every root has |F| < 1e-8 and lies in the lower half-plane."""
        assert resonances
        for res in resonances:
            assert res.residual < 1e-8
            assert abs(condition_residual(system, res.k)) < 1e-8
            assert res.k.imag < 0.0

    def test_one_resonance_per_visible_level(self, system, resonances):
        """Each distinct visible eigenvalue in the band yields one resonance."""
        assert len(resonances) == len(system.evaluator.visible_levels(*BAND))

    def test_sorted_and_near_parent(self, system, resonances):
        """Roots are sorted by Re k and sit within a mean spacing of their parent eigenvalue."""
        reals = [res.k.real for res in resonances]
        assert reals == sorted(reals)
        for res in resonances:
            mode = res.seed_mode
            parent = math.hypot(mode.n * math.pi / system.rect.c1, mode.m * math.pi / system.rect.c2)
            spacing = 2.0 * math.pi / (system.rect.area * parent)
            assert abs(res.k.real - parent) < spacing

    def test_derived_quantities(self, resonances):
        """Energy, frequency and halfwidth follow from k."""
        res = resonances[0]
        assert res.energy == pytest.approx(res.k**2)
        assert res.frequency_GHz == pytest.approx(299792458.0 * res.k.real / (2 * math.pi) / 1e9)
        assert res.halfwidth == pytest.approx(2.0 * abs(res.k.real * res.k.imag))

    def test_accepted_roots_are_divided_out(self, system):
        """A seed whose own root is already known converges elsewhere or not at all."""
        level = system.evaluator.visible_levels(*BAND)[0]
        root = _newton(system, level, NewtonOptions())
        assert root is not None
        other = _newton(system, level, NewtonOptions(), known=[root])
        assert other is None or abs(other - root) > 1e-6 * abs(root)

    def test_merged_seeds_are_reported(self, caplog):
        """Two seeds on one root keep the better residual and log a warning."""
        first = Resonance(k=40.0 - 0.01j, residual=1e-9, seed_mode=ModeIndex(1, 1))
        second = Resonance(k=40.0 - 0.01j + 1e-9, residual=1e-10, seed_mode=ModeIndex(2, 1))
        with caplog.at_level("WARNING"):
            kept = _deduplicate([first, second], 1e-6)
        assert kept == [second]
        assert "same root" in caplog.text

    def test_no_merged_seeds_in_band(self, system, caplog):
        with caplog.at_level("WARNING"):
            found = find_resonances(system, (5.0, 95.0))
        assert "same root" not in caplog.text
        assert len(found) == len(system.evaluator.visible_levels(5.0, 95.0))

    def test_nodal_modes_give_no_resonance(self, rect):
        """With x0 on x = c1/2 only odd-n levels resonate, one root per distinct level."""
        sys = ResonatorSystem.build(rect, (0.15, 0.0731), 5e-4, 100.0)
        band = (5.0, 95.0)
        found = find_resonances(sys, band)

        table = sys.evaluator.table
        lam = table.eigenvalues
        odd = (table.n % 2 == 1) & (lam >= band[0] ** 2) & (lam <= band[1] ** 2)
        values = np.sort(lam[odd])
        distinct = 1 + int(np.sum(np.diff(values) > 1e-12 * values[1:]))
        assert len(found) == distinct
        assert all(res.seed_mode.n % 2 == 1 for res in found)

    def test_roots_stable_under_cutoff_doubling(self, rect, x0, resonances):
        """Doubling the basis cutoff moves every root by less than 1e-4 relative."""
        doubled = ResonatorSystem.build(rect, x0, 5e-4, 100.0, cutoff_factor=50.0)
        moved = find_resonances(doubled, BAND)
        assert len(moved) == len(resonances)
        for before, after in zip(resonances, moved):
            assert abs(after.k - before.k) < 1e-4 * abs(before.k)

    def test_band_beyond_cutoff(self, system):
        """A band edge past the basis margin is refused."""
        with pytest.raises(CutoffError):
            find_resonances(system, (10.0, 150.0))

    def test_invalid_band(self, system):
        with pytest.raises(DomainError):
            find_resonances(system, (40.0, 20.0))

    def test_newton_options_validated(self):
        with pytest.raises(DomainError):
            NewtonOptions(tol=0.0)
        with pytest.raises(DomainError):
            NewtonOptions(max_iter=0)

    def test_reduced_radiation_form_halves_widths(self, rect, x0):
        """The (1 + ika) form gives widths about half those of the (1 + 2ika) form."""
        rr1 = ResonatorSystem.build(rect, x0, 5e-4, 100.0, condition=ResonanceCondition.RR1)
        eq18 = ResonatorSystem.build(rect, x0, 5e-4, 100.0, condition="eq18")
        wide = {res.seed_mode: res for res in find_resonances(rr1, BAND)}
        narrow = {res.seed_mode: res for res in find_resonances(eq18, BAND)}
        common = [mode for mode in wide if mode in narrow]
        assert common
        for mode in common:
            ratio = narrow[mode].k.imag / wide[mode].k.imag
            assert ratio == pytest.approx(0.5, abs=0.1)


class TestPerturbativeEstimate:
    """Weak-coupling estimate from the parent eigenvalue."""

    def test_agrees_with_newton(self, system, resonances):
        """Estimated halfwidths of isolated levels lie within 30% of the nearest Newton root."""
        compared = 0
        for level in system.evaluator.visible_levels(*BAND):
            try:
                estimate = perturbative_estimate(system, level.mode)
            except IsolationError:
                continue
            res = nearest_root(resonances, estimate.energy)
            assert estimate.halfwidth == pytest.approx(res.halfwidth, rel=0.3)
            assert estimate.energy.real == pytest.approx(res.energy.real, abs=0.1 * system.evaluator.neighbour_gap(level.eigenvalue))
            assert estimate.k.imag < 0.0
            compared += 1
        assert compared >= 5

    def test_width_law_between_radii(self, rect, x0):
        """Root halfwidth over the background factor doubles from a = 2.5e-4 to 5e-4 m."""
        scaled = {}
        for a in (2.5e-4, 5e-4):
            sys = ResonatorSystem.build(rect, x0, a, 100.0)
            roots = find_resonances(sys, BAND)
            scaled[a] = {}
            for level in sys.evaluator.visible_levels(*BAND):
                try:
                    estimate = perturbative_estimate(sys, level.mode)
                except IsolationError:
                    continue
                scaled[a][level.mode] = nearest_root(roots, estimate.energy).halfwidth / estimate.background_factor
        common = [mode for mode in scaled[2.5e-4] if mode in scaled[5e-4]][:10]
        assert len(common) >= 5
        for mode in common:
            assert scaled[5e-4][mode] / scaled[2.5e-4][mode] == pytest.approx(2.0, rel=0.1)

    def test_estimate_includes_smooth_slope(self, system):
        """The halfwidth is below the frozen-background value pi w eps / (pi Z_s - 1)^2."""
        level = system.evaluator.visible_levels(*BAND)[0]
        estimate = perturbative_estimate(system, level.mode)
        eps = 2.0 * system.a * math.sqrt(level.eigenvalue)
        frozen = math.pi * level.weight * eps / (math.pi * estimate.smooth_z - 1.0) ** 2
        assert 0.0 < estimate.halfwidth < frozen

    def test_invisible_mode_has_no_width(self, rect):
        """A mode with a node at the antenna stays a sharp level."""
        sys = ResonatorSystem.build(rect, (0.15, 0.0731), 5e-4, 100.0)
        estimate = perturbative_estimate(sys, ModeIndex(2, 1))
        assert estimate.weight == 0.0
        assert estimate.halfwidth == 0.0
        assert estimate.energy == pytest.approx(estimate.eigenvalue)


class TestPhaseScan:
    """Real-axis oracle from the reflection phase."""

    def test_winding_and_peak_of_isolated_resonance(self, system, resonances):
        """The phase winds by 2pi across one resonance; the delay peak sits at Re k with width |Im k|."""
        candidates = isolated(resonances)
        assert candidates
        res = candidates[0]
        gamma = abs(res.k.imag)
        band = (res.k.real - 50.0 * gamma, res.k.real + 50.0 * gamma)
        step = gamma / 10.0

        assert phase_winding(system, band, step) == pytest.approx(2.0 * math.pi, abs=0.15)

        peaks = phase_scan_oracle(system, band, step)
        assert len(peaks) == 1
        assert peaks[0].resolved
        assert peaks[0].k_center == pytest.approx(res.k.real, abs=step)
        assert peaks[0].width == pytest.approx(gamma, rel=0.2)

    def test_grid_step_limit(self, system):
        """The grid must resolve a tenth of the mean spacing."""
        with pytest.raises(DomainError):
            phase_scan_oracle(system, (20.0, 30.0), 1.0)
