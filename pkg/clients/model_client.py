"""
Client for single-cavity tables: modes, xi, reflection, amplitudes and resonances.
"""

import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

from billiard import (
    Point,
    Rectangle,
    XiConvention,
    enumerate_modes,
    mode_weights,
    weyl_mean_counting,
    xi_image_oracle,
)
from clients.client import Client
from clients.config_loader import RunConfig
from clients.logging_config import model_logger as logger
from clients.output_client import Table
from coupling import (
    identify_parameters,
    low_energy_mismatch,
    point_amplitudes,
    point_flux_balance,
    tube_amplitudes,
    tube_flux_balance,
)
from errors import CavityScatterError, IsolationError
from resonance import (
    NewtonOptions,
    Resonance,
    ResonatorSystem,
    find_resonances,
    perturbative_estimate,
    phase_scan_oracle,
    reflection_on_grid,
    reflection_phase,
)
from spectral_stats import freq_from_k

RESONANCE_COLUMNS = [
    "cavity_id",
    "c1_m",
    "c2_m",
    "x0_x_m",
    "x0_y_m",
    "a_m",
    "re_k_per_m",
    "im_k_per_m",
    "f_GHz",
    "halfwidth_per_m2",
    "residual",
    "seed_n",
    "seed_m",
]

# ka values of the amplitude table: ten per decade from 1e-4 to 1
AMPLITUDE_KA = np.logspace(-4.0, 0.0, 41)
AMPLITUDE_ORDERS = (0, 1, 2, 3)

# Phase-scan grid step as a share of the mean wavenumber spacing
PHASE_SCAN_STEP = 0.02


def resonance_table(cavity_id: int, rect: Rectangle, x0: Point, a: float, resonances: List[Resonance]) -> Table:
    """Rows of resonances.csv for one cavity."""
    table = Table(name="resonances", columns=list(RESONANCE_COLUMNS))
    for res in resonances:
        seed = res.seed_mode
        table.rows.append(
            [
                cavity_id,
                rect.c1,
                rect.c2,
                x0[0],
                x0[1],
                a,
                res.k.real,
                res.k.imag,
                res.frequency_GHz,
                res.halfwidth,
                res.residual,
                seed.n if seed is not None else None,
                seed.m if seed is not None else None,
            ]
        )
    return table


class ModelClient(Client[List[Table]]):
    """Client for tabulating the single-cavity model of the run configuration."""

    def __init__(self, config: RunConfig):
        """Initialize the model client."""
        logger.info("Initializing ModelClient")
        self.config = config
        self.cavity = config.cavity
        self.spec = config.ensemble
        self.rect = self.cavity.rect
        self.x0 = self.cavity.x0_m
        logger.info("ModelClient initialized successfully")

    def get_name(self) -> str:
        """Get the name of this client."""
        return "ModelClient"

    def run(self) -> List[Table]:
        """Run the resonance search for the configured cavity."""
        logger.info("Running ModelClient")
        return self.resonances()

    def build_system(self, k_max: float) -> ResonatorSystem:
        return ResonatorSystem.build(
            self.rect,
            self.x0,
            self.spec.antenna_radius_m,
            k_max,
            cutoff_factor=self.spec.cutoff_factor,
            condition=self.spec.resonance_condition,
            convention=XiConvention(self.spec.xi_convention),
            max_modes=self.spec.max_modes,
        )

    # ========== MODES ==========

    def modes(self) -> List[Table]:
        """Eigenvalues up to the top of the band with their weights at x0 and the Weyl count."""
        k_max = self.cavity.band_per_m[1]
        table = enumerate_modes(self.rect, k_max**2, max_modes=self.spec.max_modes)
        weights = mode_weights(table, self.x0)
        k = np.sqrt(table.eigenvalues)
        counts = weyl_mean_counting(self.rect, table.eigenvalues) if len(table) else np.empty(0)
        frequencies = freq_from_k(k)

        out = Table(
            name="modes",
            columns=["rank", "n", "m", "eigenvalue_per_m2", "k_per_m", "f_GHz", "weyl_count", "weight_per_m2"],
        )
        for i in range(len(table)):
            out.rows.append(
                [i + 1, table.n[i], table.m[i], table.eigenvalues[i], k[i], frequencies[i], counts[i], weights[i]]
            )
        logger.info(f"Tabulated {len(table)} modes below {k_max:.6g} 1/m")
        return [out]

    # ========== XI ==========

    def xi(self, oracle: bool = False) -> List[Table]:
        """
        xi and Z on the real grid and at the imaginary wavenumbers i kappa.

        With oracle=True the kappa rows carry the method-of-images value and the difference.
        """
        grid = self.config.grid
        k = grid.k_values()
        k_top = max(grid.k_max_per_m, max(grid.kappa_per_m))
        system = self.build_system(k_top)
        evaluator = system.evaluator

        table = Table(
            name="xi",
            columns=[
                "kind",
                "value_per_m",
                "ksq_per_m2",
                "xi_re",
                "xi_im",
                "z_re",
                "z_im",
                "tail_bound",
                "oracle_xi",
                "oracle_diff",
            ],
        )
        xi_real = evaluator.xi_on_grid(k * k)
        for kv, xv in zip(k, xi_real):
            ksq = kv * kv
            table.rows.append(
                ["k", kv, ksq, xv, 0.0, xv - system.log_radius_term, 0.0, evaluator.tail_bound(ksq), None, None]
            )

        for kappa in grid.kappa_per_m:
            ksq = -(kappa**2)
            value = evaluator.xi(ksq)
            oracle_xi = oracle_diff = None
            if oracle:
                oracle_xi = xi_image_oracle(self.rect, self.x0, kappa)
                oracle_diff = value.real - oracle_xi
                logger.info(f"kappa = {kappa:g}: series {value.real:.10g}, images {oracle_xi:.10g}")
            table.rows.append(
                [
                    "kappa",
                    kappa,
                    ksq,
                    value.real,
                    value.imag,
                    value.real - system.log_radius_term,
                    value.imag,
                    evaluator.tail_bound(ksq),
                    oracle_xi,
                    oracle_diff,
                ]
            )
        return [table]

    # ========== REFLECTION ==========

    def reflect(self) -> List[Table]:
        """r(k), |r| and the unwrapped phase on the real grid."""
        grid = self.config.grid
        k = grid.k_values()
        system = self.build_system(grid.k_max_per_m)
        r = reflection_on_grid(system, k)
        phase = reflection_phase(system, k)
        table = Table(name="reflection", columns=["k_per_m", "r_re", "r_im", "abs_r", "phase_rad"])
        for kv, rv, pv in zip(k, r, phase):
            table.rows.append([kv, rv.real, rv.imag, abs(rv), pv])
        return [table]

    # ========== AMPLITUDES ==========

    def amplitudes(self) -> List[Table]:
        """Point-junction against tube amplitudes over ka, with flux balances and the s-wave mismatch."""
        a = self.spec.antenna_radius_m
        params = identify_parameters(a)
        table = Table(
            name="amplitudes",
            columns=[
                "ka",
                "k_per_m",
                "order",
                "point_r_re",
                "point_r_im",
                "point_t_abs2",
                "point_flux",
                "tube_r_re",
                "tube_r_im",
                "tube_t_abs2",
                "tube_flux",
                "mismatch",
            ],
        )
        for ka in AMPLITUDE_KA:
            k = float(ka) / a
            point = point_amplitudes(params, k)
            mismatch = low_energy_mismatch(a, k)
            for order in AMPLITUDE_ORDERS:
                tube = tube_amplitudes(a, order, k)
                table.rows.append(
                    [
                        float(ka),
                        k,
                        order,
                        point.r.real,
                        point.r.imag,
                        point.transmission_probability,
                        point_flux_balance(params, k),
                        tube.r.real,
                        tube.r.imag,
                        tube.transmission_probability,
                        tube_flux_balance(a, order, k),
                        mismatch if order == 0 else None,
                    ]
                )
        return [table]

    # ========== RESONANCES ==========

    def resonances(self, oracle: bool = False, newton: Optional[NewtonOptions] = None) -> List[Table]:
        """
        Complex resonances in the configured band.

        With oracle=True two more tables are produced: the phase-delay peaks over the band and
        the first-order estimate for every seed level.
        """
        band = self.cavity.band_per_m
        system = self.build_system(band[1])
        found = find_resonances(system, band, newton or self.spec.newton)
        tables = [resonance_table(0, self.rect, self.x0, system.a, found)]
        if oracle:
            tables.extend(self._oracle_tables(system, band, found))
        return tables

    def _oracle_tables(self, system: ResonatorSystem, band, found: List[Resonance]) -> List[Table]:
        k_lo = max(band[0], 1e-3 * band[1])
        step = PHASE_SCAN_STEP * 2.0 * np.pi / (self.rect.area * band[1])
        peaks = phase_scan_oracle(system, (k_lo, band[1]), step)
        peak_table = Table(name="phase_peaks", columns=["k_center_per_m", "width_per_m", "resolved"])
        for peak in peaks:
            peak_table.rows.append([peak.k_center, peak.width, peak.resolved])

        estimate_table = Table(
            name="perturbative",
            columns=["seed_n", "seed_m", "eigenvalue_per_m2", "re_e_per_m2", "im_e_per_m2", "background_factor"],
        )
        for res in found:
            if res.seed_mode is None:
                continue
            try:
                estimate = perturbative_estimate(system, res.seed_mode)
            except IsolationError as e:
                logger.warning(f"No first-order estimate for {res.seed_mode}: {str(e)}")
                continue
            except CavityScatterError as e:
                logger.error(f"Error estimating {res.seed_mode}: {str(e)}")
                continue
            estimate_table.rows.append(
                [
                    res.seed_mode.n,
                    res.seed_mode.m,
                    estimate.eigenvalue,
                    estimate.energy.real,
                    estimate.energy.imag,
                    estimate.background_factor,
                ]
            )
        logger.info(f"Phase scan found {len(peaks)} peaks for {len(found)} resonances")
        return [peak_table, estimate_table]
