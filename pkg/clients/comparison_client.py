"""
Client for comparing spacing statistics with the Poisson law or with external data.
"""

import io
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import control
from adapters import CsvLevelAdapter, LevelUnit
from billiard import Rectangle
from clients.client import Client
from clients.ensemble_client import histogram_table
from clients.logging_config import comparison_logger as logger
from clients.output_client import Table
from errors import OutputError
from spectral_stats import (
    POISSON_SMALL_S_FRACTION,
    SpacingHistogram,
    build_histogram,
    child_seed,
    compare_histograms,
    compare_to_reference,
    decoupled_control_spacings,
    poisson_compare,
)

COMPARISON_COLUMNS = [
    "against",
    "sample_count",
    "reference_count",
    "ks_distance",
    "p_value",
    "small_s_fraction",
    "poisson_small_s_fraction",
    "histogram_l1",
]


class ComparisonClient(Client[List[Table]]):
    """
    Client comparing one spacing sample with a reference.

    The sample comes from a previous run directory, from the decoupled control, or is passed in.
    The reference is "poisson" or a file holding spacings (column s), a histogram
    (bin_lo, bin_hi, density) or a list of levels in the declared unit.
    """

    def __init__(
        self,
        bins: int,
        s_max: float,
        against: str = "poisson",
        unit: LevelUnit = LevelUnit.GHZ,
        rect: Optional[Rectangle] = None,
        plot: bool = False,
    ):
        """Initialize the comparison client."""
        logger.info("Initializing ComparisonClient")
        self.bins = bins
        self.s_max = s_max
        self.against = against
        self.unit = unit
        self.rect = rect
        self.plot = plot
        self.adapter = CsvLevelAdapter()
        self.spacings = np.empty(0)
        self.figure_png: Optional[bytes] = None
        self.summary: Dict[str, Any] = {}
        logger.info("ComparisonClient initialized successfully")

    def get_name(self) -> str:
        """Get the name of this client."""
        return "ComparisonClient"

    # ========== SAMPLES ==========

    def load_run(self, run_dir: Path) -> np.ndarray:
        """Spacings of a previous run directory (spacings.csv, or spacings.json)."""
        run_dir = Path(run_dir)
        for name in ("spacings.csv", "spacings.json"):
            if (run_dir / name).exists():
                self.spacings = self.adapter.read_spacings(run_dir / name)
                logger.info(f"Loaded {self.spacings.size} spacings from {run_dir / name}")
                return self.spacings
        raise OutputError(f"{run_dir} holds no spacings.csv or spacings.json")

    def load_control(self, n_levels: int, master_seed: int, c_range: Tuple[float, float]) -> np.ndarray:
        """Unfolded spacings of the lowest n_levels eigenvalues of a random decoupled rectangle."""
        rng = np.random.default_rng(child_seed(master_seed, 0))
        _, self.spacings = decoupled_control_spacings(n_levels, rng, c_range)
        return self.spacings

    def use_spacings(self, spacings) -> None:
        self.spacings = np.asarray(spacings, dtype=float)

    # ========== REFERENCES ==========

    def _reference(self) -> Tuple[Optional[np.ndarray], Optional[SpacingHistogram]]:
        path = Path(self.against)
        if path.is_dir():
            for name in ("spacings.csv", "spacings.json"):
                if (path / name).exists():
                    return self.adapter.read_spacings(path / name), None
            raise OutputError(f"{path} holds no spacings.csv or spacings.json")
        fields = self.adapter.read_fields(path)
        if "s" in fields:
            return self.adapter.read_spacings(path), None
        if {"bin_lo", "bin_hi", "density"} <= set(fields):
            return None, self.adapter.read_histogram(path)
        levels = self.adapter.read_levels(path, self.unit)
        return levels.unfolded_spacings(self.rect), None

    # ========== RUN ==========

    def run(self) -> List[Table]:
        """Compare the loaded sample; returns the comparison and histogram tables."""
        logger.info(f"Running ComparisonClient against {self.against}")
        histogram = build_histogram(self.spacings, self.bins, self.s_max)
        row: Dict[str, Any] = {name: None for name in COMPARISON_COLUMNS}
        row.update(against=self.against, sample_count=int(self.spacings.size))
        if self.spacings.size:
            row["small_s_fraction"] = float(np.mean(self.spacings < control.small_s_threshold))
        row["poisson_small_s_fraction"] = POISSON_SMALL_S_FRACTION
        tables: List[Table] = []
        reference_histogram: Optional[SpacingHistogram] = None

        if self.against == "poisson":
            result = poisson_compare(self.spacings)
            row.update(
                ks_distance=result.ks_distance,
                p_value=result.p_value,
                small_s_fraction=result.small_s_fraction,
                histogram_l1=poisson_l1(histogram),
            )
        else:
            reference_spacings, reference_histogram = self._reference()
            if reference_spacings is not None:
                result = compare_to_reference(self.spacings, reference_spacings)
                row.update(ks_distance=result.ks_distance, p_value=result.p_value, reference_count=result.reference_count)
                reference_histogram = build_histogram(reference_spacings, self.bins, self.s_max)
            else:
                # Rebin the sample onto the stored reference bins
                edges = reference_histogram.bin_edges
                histogram = build_histogram(self.spacings, edges.size - 1, float(edges[-1]))
            row["histogram_l1"] = compare_histograms(histogram, reference_histogram)
            reference_table = histogram_table(reference_histogram)
            reference_table.name = "reference_histogram"
            tables.append(reference_table)

        logger.info(
            f"KS distance {row['ks_distance']}, small-s fraction {row['small_s_fraction']} "
            f"(Poisson {POISSON_SMALL_S_FRACTION:.4f}) over {row['sample_count']} spacings"
        )
        self.summary = {k: v for k, v in row.items() if k != "against"}
        comparison = Table(name="comparison", columns=list(COMPARISON_COLUMNS), rows=[[row[c] for c in COMPARISON_COLUMNS]])
        if self.plot:
            self.figure_png = render_histogram(histogram, reference_histogram)
        return [comparison, histogram_table(histogram)] + tables


def poisson_l1(histogram: SpacingHistogram) -> float:
    """L1 distance between the histogram and the bin-averaged e^{-s}."""
    return float(np.sum(np.abs(histogram.densities - histogram.poisson_densities()) * histogram.bin_widths))


def render_histogram(histogram: SpacingHistogram, reference: Optional[SpacingHistogram] = None) -> bytes:
    """PNG of the spacing density with the e^{-s} curve and an optional reference outline."""
    fig = Figure(figsize=(8, 5))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    edges = histogram.bin_edges
    ax.bar(edges[:-1], histogram.densities, width=histogram.bin_widths, align="edge", alpha=0.6, label="computed")
    if reference is not None:
        ax.stairs(reference.densities, reference.bin_edges, color="k", linewidth=1.5, label="reference")
    s = np.linspace(0.0, edges[-1], 400)
    ax.plot(s, np.exp(-s), "r-", linewidth=2, label="Poisson e^{-s}")
    ax.set_xlabel("s")
    ax.set_ylabel("P(s)")
    ax.set_title(f"Nearest-neighbour spacings ({histogram.in_range_count} of {histogram.sample_count} in range)")
    ax.legend()
    buffer = io.BytesIO()
    fig.savefig(buffer, format="png", dpi=100)
    return buffer.getvalue()
