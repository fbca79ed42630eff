"""Metrological gain of the GHZ strategy over the separable strategy.

The gain is the squared ratio of optimal precisions,

    r = (delta_omega_sep / delta_omega_ent)^2
      = [F_ent(tau_ent*) / (tau_tilde_ent + tau_ent*)]
        / [F_sep(tau_sep*) / (tau_tilde_sep + tau_sep*)]

with each strategy running at its own optimal sensing time.  r > 1 means
entangling the probe pays off even after the (generally slower) GHZ
preparation and readout are charged to the duty cycle.

Besides the pointwise gain this module locates the break-even overhead
(r = 1 threshold), evaluates overhead scaling laws in the particle
number, scans for the largest still-advantageous ensemble size and the
size maximising the gain, and checks monotonicity of r in the entangled
overhead.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from .bath import BathKind, BathModel, coherence_time
from .errors import DomainError, InfeasibleTimingError, NoThresholdError
from .opttime import optimal_sensing_time
from .qfi import ProbeKind, qfi_ghz, qfi_separable

__all__ = [
    "GainResult",
    "ScalingKind",
    "ScalingLaw",
    "MonotonicityViolation",
    "gain",
    "gain_isolated",
    "threshold_ent_time",
    "precision_opt",
    "scaling_law_eval",
    "n_cutoff",
    "n_max_gain",
    "monotonicity_scan",
]


@dataclass(frozen=True)
class GainResult:
    """Gain r together with both optima it was assembled from."""

    r: float
    tau_opt_sep: float
    tau_opt_ent: float
    f_sep: float
    f_ent: float
    round_sep: float
    round_ent: float


class ScalingKind(str, Enum):
    CONSTANT = "constant"
    LOGARITHMIC = "logarithmic"
    SQUARE_ROOT = "square-root"
    LINEAR = "linear"


@dataclass(frozen=True)
class ScalingLaw:
    """How the entangled overhead (in units of t_c) grows with N.

    ``base`` is the separable overhead ratio tau_tilde_sep / t_c that the
    law is anchored to.
    """

    kind: ScalingKind
    base: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ScalingKind(self.kind))
        if self.base < 0.0:
            raise DomainError(f"scaling base must be non-negative, got {self.base!r}")


class MonotonicityViolation(NamedTuple):
    index: int
    x_lower: float
    x_upper: float
    r_lower: float
    r_upper: float


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"particle count must be a positive integer, got {n!r}")


def gain(model: BathModel, n: int, tau_tilde_sep: float, tau_tilde_ent: float) -> GainResult:
    """Gain of an N-particle GHZ probe over N separable particles.

    Optimal sensing times come from the closed forms where available and
    the numeric optimiser otherwise; the gain is then the ratio of the
    two information rates.
    """
    _check_n(n)
    if tau_tilde_sep < 0.0 or tau_tilde_ent < 0.0:
        raise DomainError("overhead times must be non-negative")
    sep = optimal_sensing_time(model, tau_tilde_sep, 1)
    ent = optimal_sensing_time(model, tau_tilde_ent, n)
    f_sep = qfi_separable(n, sep.tau_opt, model)
    f_ent = qfi_ghz(n, ent.tau_opt, model)
    round_sep = tau_tilde_sep + sep.tau_opt
    round_ent = tau_tilde_ent + ent.tau_opt
    r = (f_ent / round_ent) / (f_sep / round_sep)
    return GainResult(r, sep.tau_opt, ent.tau_opt, f_sep, f_ent, round_sep, round_ent)


def gain_isolated(n: int, x_sep: float, x_ent: float) -> float:
    """Decoherence-free gain N ((1 - x_ent)/(1 - x_sep))^2.

    x_sep and x_ent are the overheads in units of the coherence time;
    both must be < 1 for any sensing to happen.
    """
    _check_n(n)
    for name, x in (("x_sep", x_sep), ("x_ent", x_ent)):
        if x < 0.0:
            raise DomainError(f"{name} must be non-negative, got {x!r}")
        if x >= 1.0:
            raise InfeasibleTimingError(
                f"{name} = {x!r} consumes the whole coherence time"
            )
    ratio = (1.0 - x_ent) / (1.0 - x_sep)
    return n * ratio * ratio


def threshold_ent_time(model: BathModel, n: int, tau_tilde_sep: float) -> float:
    """Entangled overhead at which the gain crosses r = 1.

    Closed forms: t_c (1 - (1 - x_sep)/sqrt(N)) for an isolated probe and
    tau_tilde_sep / N for linear decay.  The quadratic and Ohmic laws
    have no known closed form, so the crossing is bisected on
    [0, 1e4 t_c]; monotonicity of r in the entangled overhead justifies
    bisection.
    """
    _check_n(n)
    if tau_tilde_sep < 0.0:
        raise DomainError("overhead time must be non-negative")
    if model.kind is BathKind.ISOLATED:
        t_c = coherence_time(model)
        x_sep = tau_tilde_sep / t_c
        if x_sep >= 1.0:
            raise InfeasibleTimingError(
                "separable overhead consumes the whole coherence time"
            )
        return t_c * (1.0 - (1.0 - x_sep) / math.sqrt(n))
    if model.kind is BathKind.MARKOVIAN:
        return tau_tilde_sep / n

    def excess(tau_tilde_ent: float) -> float:
        return gain(model, n, tau_tilde_sep, tau_tilde_ent).r - 1.0

    lo, hi = 0.0, 1e4 * coherence_time(model)
    at_lo = excess(lo)
    if at_lo < 0.0:
        raise NoThresholdError(
            "gain is below 1 even at zero entangled overhead", side="below"
        )
    if at_lo == 0.0:
        return 0.0
    if excess(hi) > 0.0:
        raise NoThresholdError(
            f"gain is still above 1 at the bracket end {hi!r}", side="above"
        )
    while hi - lo > 1e-9 * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def precision_opt(model: BathModel, n: int, kind: ProbeKind, tau_tilde: float,
                  total_time: float) -> float:
    """Best frequency error 1/sqrt(T * F(tau*)/(tau_tilde + tau*)).

    Assumes many rounds fit in the budget; warns when fewer than ten do,
    since the bound is only asymptotically attainable.
    """
    _check_n(n)
    if not total_time > 0.0:
        raise DomainError(f"total time budget must be positive, got {total_time!r}")
    kind = ProbeKind(kind)
    n_eff = n if kind is ProbeKind.GHZ else 1
    opt = optimal_sensing_time(model, tau_tilde, n_eff)
    if kind is ProbeKind.GHZ:
        f = qfi_ghz(n, opt.tau_opt, model)
    else:
        f = qfi_separable(n, opt.tau_opt, model)
    round_time = tau_tilde + opt.tau_opt
    if total_time / round_time < 10.0:
        warnings.warn(
            "fewer than 10 rounds fit in the total time budget; the "
            "precision bound may not be attainable",
            stacklevel=2,
        )
    return 1.0 / math.sqrt(total_time * f / round_time)


def scaling_law_eval(law: ScalingLaw, n: int) -> float:
    """Entangled overhead ratio x_ent = tau_tilde_ent / t_c at size N."""
    _check_n(n)
    if law.kind is ScalingKind.CONSTANT:
        return law.base
    if law.kind is ScalingKind.LOGARITHMIC:
        return (1.0 + math.log2(n)) * law.base
    if law.kind is ScalingKind.SQUARE_ROOT:
        return math.sqrt(n) * law.base
    return n * law.base


def _gain_under_law(model: BathModel, law: ScalingLaw, tau_tilde_sep: float,
                    t_c: float, n: int) -> float | None:
    """Gain at size N with the entangled overhead set by the law;
    None when the timing is infeasible (isolated probe only)."""
    tau_tilde_ent = scaling_law_eval(law, n) * t_c
    try:
        return gain(model, n, tau_tilde_sep, tau_tilde_ent).r
    except InfeasibleTimingError:
        return None


def _scan_gain(model: BathModel, law: ScalingLaw, tau_tilde_sep: float,
               n_search_max: int):
    """Yield (n, r) over 1..n_search_max with r = None for infeasible
    points, stopping early once the gain has been below 1 for 10
    consecutive sizes after having been at or above 1 (all supported
    scalings are eventually monotone in N)."""
    t_c = coherence_time(model)
    seen_advantage = False
    below = 0
    for n in range(1, n_search_max + 1):
        r = _gain_under_law(model, law, tau_tilde_sep, t_c, n)
        yield n, r
        if r is not None and r >= 1.0:
            seen_advantage = True
            below = 0
        else:
            below += 1
            if seen_advantage and below >= 10:
                return


def n_cutoff(model: BathModel, law: ScalingLaw, tau_tilde_sep: float,
             n_search_max: int = 10**6) -> int | None:
    """Largest N whose gain still reaches 1, provided nothing above it
    does (0 when no size gains; None when the gain is still above 1 at
    the end of the scanned range, i.e. no cutoff was found)."""
    if n_search_max < 2:
        raise DomainError(f"n_search_max must be >= 2, got {n_search_max!r}")
    if tau_tilde_sep < 0.0:
        raise DomainError("overhead time must be non-negative")
    last_qualifying = 0
    last_r = None
    last_n = 0
    for n, r in _scan_gain(model, law, tau_tilde_sep, n_search_max):
        if r is not None and r >= 1.0:
            last_qualifying = n
        last_r, last_n = r, n
    if last_n == n_search_max and last_r is not None and last_r > 1.0:
        return None
    return last_qualifying if last_qualifying else 0


def n_max_gain(model: BathModel, law: ScalingLaw, tau_tilde_sep: float,
               n_search_max: int = 10**6) -> tuple[int, float]:
    """Size maximising the gain, with ties broken toward smaller N.

    Splitting a much larger ensemble into blocks of this size keeps the
    per-block gain at the returned value.
    """
    if n_search_max < 1:
        raise DomainError(f"n_search_max must be >= 1, got {n_search_max!r}")
    if tau_tilde_sep < 0.0:
        raise DomainError("overhead time must be non-negative")
    best_n, best_r = 0, -math.inf
    for n, r in _scan_gain(model, law, tau_tilde_sep, n_search_max):
        if r is not None and r > best_r:
            best_n, best_r = n, r
    if best_n == 0:
        raise InfeasibleTimingError(
            "every scanned ensemble size has infeasible timing"
        )
    return best_n, best_r


def monotonicity_scan(model: BathModel, n: int, tau_tilde_sep: float,
                      x_ent_grid: Sequence[float]) -> list[MonotonicityViolation]:
    """Check that the gain strictly decreases along a grid of entangled
    overheads (in units of t_c).

    Returns every adjacent pair where it fails to, with ties tolerated
    to 1e-12 relative.  An empty list is the expected outcome for all
    supported models.
    """
    _check_n(n)
    grid = [float(x) for x in x_ent_grid]
    if len(grid) < 2:
        raise DomainError("grid must contain at least 2 points")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("grid must be strictly increasing")
    t_c = coherence_time(model)
    rs = [gain(model, n, tau_tilde_sep, x * t_c).r for x in grid]
    violations = []
    for i, (r_lo, r_hi) in enumerate(zip(rs, rs[1:])):
        if r_hi - r_lo > 1e-12 * max(abs(r_lo), abs(r_hi)):
            violations.append(
                MonotonicityViolation(i, grid[i], grid[i + 1], r_lo, r_hi)
            )
    return violations
