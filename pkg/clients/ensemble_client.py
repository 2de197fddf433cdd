"""
Client for ensemble statistics runs.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

from clients.client import Client
from clients.logging_config import ensemble_logger as logger
from clients.model_client import RESONANCE_COLUMNS, resonance_table
from clients.output_client import Table
from spectral_stats import EnsembleReport, EnsembleSpec, SpacingHistogram, run_ensemble


def spacing_table(report: EnsembleReport) -> Table:
    table = Table(name="spacings", columns=["cavity_id", "s"])
    for outcome in report.outcomes:
        if outcome.ok:
            table.rows.extend([outcome.cavity_id, float(s)] for s in outcome.spacings)
    return table


def histogram_table(histogram: SpacingHistogram) -> Table:
    table = Table(name="histogram", columns=["bin_lo", "bin_hi", "density"])
    edges = histogram.bin_edges
    for i, density in enumerate(histogram.densities):
        table.rows.append([float(edges[i]), float(edges[i + 1]), float(density)])
    return table


def cavity_status(report: EnsembleReport) -> List[Dict[str, Any]]:
    """Manifest entries, one per cavity in cavity order."""
    entries = []
    for outcome in report.outcomes:
        entries.append(
            {
                "cavity_id": outcome.cavity_id,
                "status": outcome.status,
                "c1_m": outcome.rect.c1 if outcome.rect else None,
                "c2_m": outcome.rect.c2 if outcome.rect else None,
                "x0_m": list(outcome.x0) if outcome.x0 else None,
                "resonances": len(outcome.resonances),
                "removed": outcome.removed,
                "spacings": int(outcome.spacings.size),
                "error": outcome.error,
            }
        )
    return entries


class EnsembleClient(Client[List[Table]]):
    """Client for running the random-cavity ensemble and tabulating its outputs."""

    def __init__(self, spec: EnsembleSpec, n_jobs: Optional[int] = None):
        """Initialize the ensemble client."""
        logger.info("Initializing EnsembleClient")
        self.spec = spec
        self.n_jobs = n_jobs
        self.report: Optional[EnsembleReport] = None
        logger.info("EnsembleClient initialized successfully")

    def get_name(self) -> str:
        """Get the name of this client."""
        return "EnsembleClient"

    def run(self) -> List[Table]:
        """Run every cavity and return the resonances, spacings and histogram tables."""
        logger.info(f"Running EnsembleClient with {self.spec.n_cavities} cavities")
        self.report = run_ensemble(self.spec, n_jobs=self.n_jobs)

        resonances = Table(name="resonances", columns=list(RESONANCE_COLUMNS))
        for outcome in self.report.outcomes:
            if outcome.rect is None:
                continue
            part = resonance_table(outcome.cavity_id, outcome.rect, outcome.x0, self.spec.antenna_radius_m, outcome.resonances)
            resonances.rows.extend(part.rows)

        if self.report.failed_cavities:
            logger.error(f"Error in cavities {self.report.failed_cavities}: see manifest for details")
        return [resonances, spacing_table(self.report), histogram_table(self.report.histogram)]

    def summary(self) -> Dict[str, Any]:
        if self.report is None:
            return {}
        return {
            "pooled_mean_spacing": self.report.pooled_mean_spacing,
            "spacing_count": int(self.report.spacings.size),
            "histogram_sample_count": self.report.histogram.sample_count,
            "histogram_in_range_count": self.report.histogram.in_range_count,
            "failed_cavities": self.report.failed_cavities,
        }
