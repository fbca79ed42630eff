"""Optimal sensing times.

The duty cycle of one prepare-sense-readout round is tau_tilde + tau,
where tau_tilde is the fixed preparation-plus-readout overhead.  The
sensing time that maximises the information rate F(tau)/(tau_tilde+tau)
satisfies the stationarity condition

    2 * n_eff * tau * Gamma'(tau) = 1 + tau_tilde / (tau_tilde + tau)

with n_eff = 1 for the separable probe and n_eff = N for the GHZ probe
(the two cases differ only by gamma -> N gamma, eta -> N eta, which is
why a single n_eff parameter covers both).

Closed forms exist for the linear decay law (a quadratic in tau) and the
quadratic law (a cubic, solved in complex arithmetic).  A model-agnostic
numeric path handles everything else: golden-section maximisation on an
auto-expanded bracket, then bisection on the stationarity residual to
polish the root to machine precision.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .bath import (
    BathKind,
    BathModel,
    coherence_time,
    decay_exponent,
    decay_exponent_derivative,
)
from .errors import (
    BranchError,
    DivergenceError,
    DomainError,
    InfeasibleTimingError,
    UnsupportedModelError,
)

__all__ = [
    "TimingConfig",
    "OptimalTime",
    "stationarity_residual",
    "tau_opt_isolated",
    "tau_opt_markov",
    "tau_opt_nonmarkov",
    "tau_opt_numeric",
    "optimal_sensing_time",
]

log = logging.getLogger(__name__)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TimingConfig:
    """Per-round overhead times and, optionally, the total time budget."""

    tau_prep: float = 0.0
    tau_meas: float = 0.0
    total_time: float | None = None

    def __post_init__(self):
        if self.tau_prep < 0.0 or self.tau_meas < 0.0:
            raise DomainError("preparation and readout times must be non-negative")
        if self.total_time is not None and not self.total_time > self.tau_tilde:
            raise DomainError(
                "total time budget must exceed the per-round overhead "
                f"({self.total_time!r} <= {self.tau_tilde!r})"
            )

    @property
    def tau_tilde(self) -> float:
        return self.tau_prep + self.tau_meas


@dataclass(frozen=True)
class OptimalTime:
    """A located optimum: the time, the rate it achieves, and the
    stationarity defect there (0 by convention for boundary optima)."""

    tau_opt: float
    objective: float
    residual: float


def _check_overhead(tau_tilde: float) -> None:
    if tau_tilde < 0.0:
        raise DomainError(f"overhead time must be non-negative, got {tau_tilde!r}")


def _check_n_eff(n_eff: int) -> None:
    if n_eff < 1:
        raise DomainError(f"effective particle count must be >= 1, got {n_eff!r}")


def _block_rate(model: BathModel, tau_tilde: float, n_eff: int, tau: float) -> float:
    """QFI rate n_eff^2 tau^2 exp(-2 n_eff Gamma) / (tau_tilde + tau).

    For n_eff = N this is the rate of an N-particle GHZ block; for
    n_eff = 1 it is the per-particle rate of the separable strategy.
    """
    g = decay_exponent(model, tau)
    return n_eff * n_eff * tau * tau * math.exp(-2.0 * n_eff * g) / (tau_tilde + tau)


def stationarity_residual(model: BathModel, tau_tilde: float, n_eff: int, tau: float) -> float:
    """2 n_eff tau Gamma'(tau) - 1 - tau_tilde/(tau_tilde + tau).

    Vanishes exactly at an interior maximum of the information rate.
    """
    if tau <= 0.0:
        raise DomainError(f"sensing time must be positive, got {tau!r}")
    dg = decay_exponent_derivative(model, tau)
    return 2.0 * n_eff * tau * dg - 1.0 - tau_tilde / (tau_tilde + tau)


def tau_opt_isolated(t_c: float, tau_tilde: float) -> OptimalTime:
    """Boundary optimum t_c - tau_tilde of a decoherence-free probe.

    Without dephasing the rate grows with tau, so the whole round is
    capped at the coherence time and sensing takes what overhead leaves.
    """
    _check_overhead(tau_tilde)
    if not t_c > 0.0:
        raise DomainError(f"coherence time must be positive, got {t_c!r}")
    if tau_tilde >= t_c:
        raise InfeasibleTimingError(
            f"overhead {tau_tilde!r} consumes the whole coherence time {t_c!r}; "
            "no sensing time remains"
        )
    tau = t_c - tau_tilde
    return OptimalTime(tau, tau * tau / t_c, 0.0)


def tau_opt_markov(gamma: float, tau_tilde: float, n_eff: int) -> OptimalTime:
    """Closed-form optimum for Gamma = gamma * tau (rate scaled by n_eff).

    Root of the quadratic stationarity condition:
    1/(4 g) + sqrt((tau_tilde/2 + 1/(4 g))^2 + tau_tilde/(2 g)) - tau_tilde/2
    with g = n_eff * gamma.
    """
    if not gamma > 0.0:
        raise DomainError(f"dephasing rate must be positive, got {gamma!r}")
    _check_overhead(tau_tilde)
    _check_n_eff(n_eff)
    # positive root of tau^2 + (tau_tilde - h) tau - 2 h tau_tilde with
    # h = 1/(2 n_eff gamma), evaluated without subtractive cancellation
    # (the textbook form loses the root when tau_tilde >> h)
    h = 0.5 / (n_eff * gamma)
    b = tau_tilde - h
    root = math.sqrt(b * b + 8.0 * h * tau_tilde)
    if b >= 0.0:
        tau = 4.0 * h * tau_tilde / (b + root)
    else:
        tau = 0.5 * (root - b)
    model = BathModel.markovian(gamma)
    return OptimalTime(
        tau,
        _block_rate(model, tau_tilde, n_eff, tau),
        stationarity_residual(model, tau_tilde, n_eff, tau),
    )


def _cubic_candidates(u: float) -> list[complex]:
    """The three Cardano branches for the scaled cubic
    4 t^3 + 4 t^2 u - t - 2 u = 0 (quadratic decay law, unit coefficient).

    The bracket is A + sqrt(A^2 - (u^2 + 3/4)^3) with A = u^3 - 45 u / 8;
    the difference under the square root is expanded exactly to avoid the
    catastrophic cancellation of forming A^2 first.  The physically
    correct branch carries the principal cube root times e^{i 2 pi / 3};
    candidates are ordered with it first.
    """
    a_term = u * u * u - 5.625 * u
    disc = -13.5 * u**4 + 29.953125 * u * u - 0.421875
    p_term = u * u + 0.75
    w = (a_term + cmath.sqrt(complex(disc))) ** (1.0 / 3.0)
    roots = []
    for k in (1, 2, 0):
        z = w * cmath.exp(2j * math.pi * k / 3.0)
        roots.append(-z / 3.0 - p_term / (3.0 * z) - u / 3.0)
    return roots


def tau_opt_nonmarkov(eta: float, tau_tilde: float, n_eff: int) -> OptimalTime:
    """Closed-form optimum for Gamma = eta * tau^2 (rate scaled by n_eff).

    Solved in units of the block coherence time 1/sqrt(n_eff * eta),
    which reduces the cubic to a single-parameter family and keeps it
    well conditioned for large n_eff.  The selected branch must come out
    real and positive; otherwise all three candidates are reported.
    Certified up to scaled overheads tau_tilde*sqrt(n_eff*eta) of ~1e5;
    past that the residual imaginary noise can trip the realness check,
    and optimal_sensing_time falls back to the numeric optimiser.
    """
    if not eta > 0.0:
        raise DomainError(f"decay coefficient must be positive, got {eta!r}")
    _check_overhead(tau_tilde)
    _check_n_eff(n_eff)
    scale = math.sqrt(n_eff * eta)
    candidates = [t / scale for t in _cubic_candidates(tau_tilde * scale)]
    picked = candidates[0]
    if not picked.real > 0.0:
        raise BranchError(
            f"selected cubic branch has non-positive real part {picked!r}", candidates
        )
    if abs(picked.imag) >= 1e-9 * picked.real:
        raise BranchError(
            f"selected cubic branch is not real: {picked!r}", candidates
        )
    # one Newton step in scaled units scrubs the O(u*eps) noise the root
    # assembly picks up when the scaled overhead u is large
    u_tilde = tau_tilde * scale
    u = picked.real * scale
    g_val = 4.0 * u**3 + 4.0 * u * u * u_tilde - u - 2.0 * u_tilde
    g_der = 12.0 * u * u + 8.0 * u_tilde * u - 1.0
    tau = (u - g_val / g_der) / scale
    model = BathModel.nonmarkovian(eta)
    residual = stationarity_residual(model, tau_tilde, n_eff, tau)
    if abs(residual) > 1e-8:
        raise BranchError(
            f"cubic root fails the stationarity condition (residual {residual:.3e})",
            candidates,
        )
    return OptimalTime(tau, _block_rate(model, tau_tilde, n_eff, tau), residual)


def tau_opt_numeric(model: BathModel, tau_tilde: float, n_eff: int, tol: float = 1e-10) -> OptimalTime:
    """Model-agnostic interior maximum of the information rate.

    Works on the log of the rate (immune to exp(-2 N Gamma) underflow).
    The bracket [0, B] starts at the coherence time and doubles until the
    maximum is interior; golden-section narrows it, then bisection on the
    stationarity residual polishes the root far beyond ``tol``.
    """
    if model.kind is BathKind.ISOLATED:
        raise UnsupportedModelError(
            "an isolated probe has no interior optimum; use tau_opt_isolated"
        )
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    _check_overhead(tau_tilde)
    _check_n_eff(n_eff)

    def log_rate(t: float) -> float:
        return (
            2.0 * math.log(t)
            - 2.0 * n_eff * decay_exponent(model, t)
            - math.log(tau_tilde + t)
        )

    t_c = coherence_time(model)
    hi = t_c
    for _ in range(61):
        if log_rate(hi) < log_rate(0.5 * hi):
            break
        hi *= 2.0
    else:
        raise DivergenceError(
            "information rate still rising after expanding the bracket to "
            "2^60 coherence times; no interior maximum found"
        )

    a, b = 0.0, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = log_rate(c), log_rate(d)
    while b - a > 1e-2 * d:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = log_rate(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = log_rate(d)

    def res(t: float) -> float:
        return stationarity_residual(model, tau_tilde, n_eff, t)

    # bisection needs a sign change; the golden bracket has one unless the
    # maximum sat at its very edge, in which case fall back to [0, hi]
    lo, up = a, b
    if lo <= 0.0 or res(lo) > 0.0 or res(up) < 0.0:
        lo, up = 0.0, hi
    while up - lo > 1e-15 * up:
        mid = 0.5 * (lo + up)
        if res(mid) < 0.0:
            lo = mid
        else:
            up = mid
    tau = 0.5 * (lo + up)
    return OptimalTime(tau, _block_rate(model, tau_tilde, n_eff, tau), res(tau))


def optimal_sensing_time(model: BathModel, tau_tilde: float, n_eff: int, tol: float = 1e-10) -> OptimalTime:
    """Dispatch to the best available solver for the given bath model.

    Closed forms where they exist; if the cubic branch check fails the
    numeric optimiser takes over and the discrepancy is logged.
    """
    if model.kind is BathKind.ISOLATED:
        return tau_opt_isolated(coherence_time(model), tau_tilde)
    if model.kind is BathKind.MARKOVIAN:
        return tau_opt_markov(model.gamma, tau_tilde, n_eff)
    if model.kind is BathKind.NONMARKOVIAN:
        try:
            return tau_opt_nonmarkov(model.eta, tau_tilde, n_eff)
        except BranchError as exc:
            log.warning(
                "cubic closed form rejected (%s); falling back to numeric optimisation",
                exc,
            )
            return tau_opt_numeric(model, tau_tilde, n_eff, tol)
    return tau_opt_numeric(model, tau_tilde, n_eff, tol)
