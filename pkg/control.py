"""
Control Module - System Configuration Settings.

This module holds the defaults of the cavity-scatter simulator. A run configuration
file (see clients/config_loader.py) overrides any of the ensemble and numerics values;
the rest are operational settings.

IMPORTANT: The resonance-condition form is selected in registries/condition_registry.py
"""

# =============================================================================
# TOOL IDENTITY
# =============================================================================

TOOL_NAME = "cavity-scatter"
TOOL_VERSION = "1.0.0"
MANIFEST_SCHEMA_VERSION = 1

# =============================================================================
# ENSEMBLE PROCEDURE DEFAULTS
# =============================================================================

n_cavities = 10              # Rectangles per ensemble run
c_min_m = 0.20               # Smallest side length (m)
c_max_m = 0.50               # Largest side length (m)
antenna_radius_m = 5e-4      # 1 mm antenna diameter
f_max_GHz = 10.0             # Only resonances below this frequency are used
missing_fraction = 0.07      # Fraction of resonances overlooked in the measurement
master_seed = 20240607       # Root of the per-cavity seed hierarchy
bins = 20                    # Spacing histogram bins on [0, s_max]
s_max = 4.0                  # Histogram range in unfolded units
wall_exclusion_radii = 2.0   # Antenna point re-drawn if closer than this many radii to a wall

# =============================================================================
# NUMERICS
# =============================================================================

cutoff_factor = 25.0         # Basis cutoff: LAMBDA >= cutoff_factor * k_max^2
max_modes = 2_000_000        # Hard cap on the number of basis modes
visibility_threshold = 1e-20 # Mode is invisible if w_n < threshold * 4/|M|
pole_tolerance = 1e-12       # Relative distance to a visible eigenvalue treated as a pole

newton_tol = 1e-8            # Accept a root when |F(k)| < tol
newton_max_iter = 50         # Newton iterations per seed
newton_step_tol = 1e-13      # Relative step size treated as converged
newton_backtracks = 8        # Step halvings before a damped step is taken anyway
dedup_radius_factor = 1e-6   # Duplicate roots within dedup_radius_factor * k_max are merged
seed_offset_factor = 1e-3    # Minimal imaginary seed offset relative to sqrt(lambda_n)

isolation_factor = 5.0       # Neighbour must be further than this many estimated widths
singular_tolerance = 1e-14   # |D_+| below this is singular

long_wave_limit = 0.1        # ka above this leaves the long-wave regime

# =============================================================================
# STATISTICS
# =============================================================================

min_spacings_for_compare = 50
small_s_threshold = 0.25
aspect_guard_max_denominator = 10
aspect_guard_tolerance = 1e-2
image_truncation = 1e-14     # Image terms with K0 below this are dropped

# =============================================================================
# OUTPUT
# =============================================================================

float_digits = 17            # Significant digits in CSV output
output_format = "csv"        # "csv" | "json"
threads_env_var = "CAVITY_SCATTER_THREADS"
log_dir = "logs"

# =============================================================================
# USAGE EXAMPLES
# =============================================================================

# Example 1: Default measurement procedure
#   cavity-scatter ensemble --out runs/default
#   Result: 10 random rectangles, resonances below 10 GHz, 7% thinning, pooled histogram
#
# Example 2: Single cavity
#   cavity-scatter resonances --config cavity.json --out runs/one
#   Result: resonances.csv for the cavity described in the "cavity" section
#
# Example 3: Poisson baseline
#   cavity-scatter compare --control 2000 --against poisson --out runs/control
#   Result: comparison.csv with the KS distance of a decoupled rectangle spectrum
