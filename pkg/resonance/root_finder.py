"""
Damped Newton search for the complex resonances of a ResonatorSystem.

Each distinct visible eigenvalue lambda_s seeds one search. The iteration runs on the
pole-deflated function

    G(k) = (lambda_s - k^2) F(k) = pi f(k) [W + (lambda_s - k^2) Z_s] - (lambda_s - k^2)

with W the summed weight of the level, Z_s the remainder of Z with that level's pole parts
removed, and f(k) = 1 + i c k a the radiation factor. G is analytic at lambda_s, so the search
cannot be captured by the parent pole. Roots accepted from earlier seeds are divided out as
well, G(k) / prod_j (k - k_j), so a later seed cannot converge onto a neighbour's resonance.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import control
from billiard import VisibleLevel
from errors import CavityScatterError, CutoffError, DomainError
from resonance.perturbative import estimate_level
from resonance.system import Resonance, ResonatorSystem, condition_residual

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonOptions:
    tol: float = control.newton_tol
    max_iter: int = control.newton_max_iter
    dedup_radius: Optional[float] = None  # None: dedup_radius_factor * k_max
    step_tol: float = control.newton_step_tol

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"Newton tolerance must be positive, got {self.tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be a positive integer, got {self.max_iter}")
        if self.dedup_radius is not None and not self.dedup_radius > 0:
            raise DomainError(f"dedup_radius must be positive, got {self.dedup_radius}")


def _deflated(sys: ResonatorSystem, level: VisibleLevel, k: complex) -> Tuple[complex, complex, complex]:
    """G(k), dG/dk and F(k) = G/(lambda_s - k^2)."""
    ksq = k * k
    gap = level.eigenvalue - ksq
    z_s = sys.z(ksq, exclude=level.members)
    dz_s = sys.z_derivative(ksq, exclude=level.members)
    factor = sys.condition.coupling_factor(k, sys.a)
    bracket = level.weight + gap * z_s
    g = math.pi * factor * bracket - gap
    dg = (
        math.pi * sys.condition.factor_derivative(sys.a) * bracket
        + math.pi * factor * (-2.0 * k * z_s + gap * 2.0 * k * dz_s)
        + 2.0 * k
    )
    f = g / gap if gap != 0 else complex(math.inf)
    return complex(g), complex(dg), complex(f)


def _known_roots(k: complex, known: Sequence[complex]) -> Tuple[float, complex]:
    """log prod |k - k_j| and sum 1/(k - k_j) over the accepted roots."""
    log_modulus = 0.0
    inverse_sum = 0j
    for root in known:
        distance = k - root
        if distance == 0:
            return -math.inf, complex(math.inf)
        log_modulus += math.log(abs(distance))
        inverse_sum += 1.0 / distance
    return log_modulus, inverse_sum


def _seed(sys: ResonatorSystem, level: VisibleLevel) -> complex:
    k_parent = math.sqrt(level.eigenvalue)
    offset = control.seed_offset_factor * k_parent
    try:
        estimate = estimate_level(sys, level.eigenvalue, level.weight, members=level.members)
        offset = max(offset, estimate.halfwidth / (2.0 * k_parent))
    except CavityScatterError as e:
        logger.debug(f"No perturbative seed offset for {level.eigenvalue:.6g}: {str(e)}")
    return complex(k_parent, -offset)


def _newton(
    sys: ResonatorSystem, level: VisibleLevel, opts: NewtonOptions, known: Sequence[complex] = ()
) -> Optional[complex]:
    """Damped Newton from the level's seed with `known` roots divided out; None when it does not converge."""
    k = _seed(sys, level)
    # Steps are capped at half the mean wavenumber spacing 2pi/(|M| k)
    step_cap = 0.5 * 2.0 * math.pi / (sys.rect.area * max(k.real, 1e-12))
    g, dg, f = _deflated(sys, level, k)
    log_known, inverse_known = _known_roots(k, known)
    # Iterate to tol/100; acceptance re-checks the undeflated residual against tol
    target = 1e-2 * opts.tol
    for _ in range(opts.max_iter):
        if abs(f) < target:
            return k
        if g == 0 or not math.isfinite(log_known):
            return None
        slope = dg / g - inverse_known
        if slope == 0:
            return None
        step = 1.0 / slope
        if abs(step) > step_cap:
            step *= step_cap / abs(step)
        # Backtracking compares |G| / prod |k - k_j|
        size = math.log(abs(g)) - log_known
        for _ in range(control.newton_backtracks):
            trial = k - step
            if trial.real > 0:
                g_trial, dg_trial, f_trial = _deflated(sys, level, trial)
                log_trial, inverse_trial = _known_roots(trial, known)
                if g_trial == 0 or math.log(abs(g_trial)) - log_trial < size:
                    break
            step *= 0.5
        else:
            trial = k - step
            if trial.real <= 0:
                return None
            g_trial, dg_trial, f_trial = _deflated(sys, level, trial)
            log_trial, inverse_trial = _known_roots(trial, known)
        k, g, dg, f = trial, g_trial, dg_trial, f_trial
        log_known, inverse_known = log_trial, inverse_trial
        if abs(step) < opts.step_tol * abs(k):
            break
    return k if abs(f) < opts.tol else None


def _deduplicate(found: List[Resonance], radius: float) -> List[Resonance]:
    kept: List[Resonance] = []
    for res in sorted(found, key=lambda r: (r.k.real, r.k.imag)):
        duplicate = next((i for i, other in enumerate(kept) if abs(other.k - res.k) < radius), None)
        if duplicate is None:
            kept.append(res)
            continue
        logger.warning(
            f"Seeds from modes {kept[duplicate].seed_mode} and {res.seed_mode} reached the same root {res.k}; "
            f"one level has no resonance of its own"
        )
        if res.residual < kept[duplicate].residual:
            kept[duplicate] = res
    return sorted(kept, key=lambda r: (r.k.real, r.k.imag))


def find_resonances(
    sys: ResonatorSystem, band: Sequence[float], opts: Optional[NewtonOptions] = None
) -> List[Resonance]:
    """
    Complex resonances seeded by the visible eigenvalues with sqrt(lambda) in `band`.

    Seeds run in ascending order of their eigenvalue; every accepted root is divided out of
    the searches that follow, so each seed ends on a distinct zero.

    Args:
        sys: Scattering model
        band: (k_min, k_max) in 1/m
        opts: Newton settings

    Returns:
        Accepted roots with |F| < tol and Im k < 0, deduplicated and sorted by Re k.
        Seeds that fail to converge are skipped with a warning.

    Raises:
        CutoffError: If k_max^2 exceeds the basis safety margin
    """
    opts = opts or NewtonOptions()
    k_min, k_max = float(band[0]), float(band[1])
    if not (0.0 <= k_min < k_max):
        raise DomainError(f"Band must satisfy 0 <= k_min < k_max, got ({k_min}, {k_max})")
    if k_max**2 > sys.evaluator.max_energy:
        raise CutoffError(f"Band edge k_max={k_max:.6g} needs a basis cutoff of at least {25.0 * k_max**2:.6g}")

    levels = sys.evaluator.visible_levels(k_min, k_max)
    logger.info(f"Searching {len(levels)} visible levels in [{k_min:.4g}, {k_max:.4g}] 1/m")

    found: List[Resonance] = []
    failures = 0
    for level in levels:
        try:
            root = _newton(sys, level, opts, known=[res.k for res in found])
        except CavityScatterError as e:
            logger.warning(f"Newton search from {level.eigenvalue:.8g} aborted: {str(e)}")
            failures += 1
            continue
        if root is None or not root.imag < 0:
            logger.warning(f"Newton search from {level.eigenvalue:.8g} did not converge to a decaying root")
            failures += 1
            continue
        residual = abs(condition_residual(sys, root))
        if not residual < opts.tol:
            logger.warning(f"Root {root} from {level.eigenvalue:.8g} rejected with residual {residual:.3g}")
            failures += 1
            continue
        found.append(Resonance(k=root, residual=residual, seed_mode=level.mode))

    radius = opts.dedup_radius if opts.dedup_radius is not None else control.dedup_radius_factor * k_max
    resonances = _deduplicate(found, radius)
    if failures:
        logger.warning(f"{failures} of {len(levels)} seeds produced no resonance")
    logger.info(f"Found {len(resonances)} resonances")
    return resonances
