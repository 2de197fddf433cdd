"""
Spacing statistics of cavity resonances: unfolding, thinning, histograms and ensembles.
"""

from .units import freq_from_k, k_from_freq
from .levels import (
    LevelSequence,
    Provenance,
    energy_levels,
    frequency_levels,
    nearest_spacings,
    normalize_mean_spacing,
    thin_random,
    unfold,
)
from .histogram import (
    POISSON_SMALL_S_FRACTION,
    PoissonComparison,
    ReferenceComparison,
    SpacingHistogram,
    build_histogram,
    compare_histograms,
    compare_to_reference,
    poisson_compare,
)
from .ensemble import (
    CavityOutcome,
    EnsembleReport,
    EnsembleSpec,
    child_seed,
    decoupled_control_spacings,
    draw_cavity,
    draw_control_rectangle,
    process_cavity,
    run_ensemble,
    worker_count,
)

__all__ = [
    "POISSON_SMALL_S_FRACTION",
    "CavityOutcome",
    "EnsembleReport",
    "EnsembleSpec",
    "LevelSequence",
    "PoissonComparison",
    "Provenance",
    "ReferenceComparison",
    "SpacingHistogram",
    "build_histogram",
    "child_seed",
    "compare_histograms",
    "compare_to_reference",
    "decoupled_control_spacings",
    "draw_cavity",
    "draw_control_rectangle",
    "energy_levels",
    "freq_from_k",
    "frequency_levels",
    "k_from_freq",
    "nearest_spacings",
    "normalize_mean_spacing",
    "poisson_compare",
    "process_cavity",
    "run_ensemble",
    "thin_random",
    "unfold",
    "worker_count",
]
