"""Dephasing decay exponents for the supported bath models.

A probe particle coupled to its environment loses phase coherence as
exp(-Gamma(tau)) over a sensing interval tau.  Four laws are supported:

* isolated        Gamma = 0 (coherence limited only by a configured t_c)
* markovian       Gamma = gamma * tau
* nonmarkovian    Gamma = eta * tau**2
* ohmic           microscopic spin-boson form
                  Gamma = (alpha/2) ln(1 + Omega_c^2 tau^2)
                          + alpha ln[ sinh(pi tau / beta) / (pi tau / beta) ]

The Ohmic form reduces to the Markovian law with gamma = alpha*pi/beta for
tau >> beta and to the quadratic law with eta = alpha*Omega_c^2/2 for
tau << beta, Omega_c*tau << 1.  All functions are pure and safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import DomainError, SolverError, ValidationError

__all__ = [
    "BathKind",
    "BathModel",
    "decay_exponent",
    "decay_exponent_derivative",
    "coherence_time",
    "ohmic_limit_rates",
]


class BathKind(str, Enum):
    ISOLATED = "isolated"
    MARKOVIAN = "markovian"
    NONMARKOVIAN = "nonmarkovian"
    OHMIC = "ohmic"


# fields each kind requires; everything else must be absent
_REQUIRED = {
    BathKind.ISOLATED: ("t_c",),
    BathKind.MARKOVIAN: ("gamma",),
    BathKind.NONMARKOVIAN: ("eta",),
    BathKind.OHMIC: ("alpha", "omega_c", "beta"),
}
_FIELDS = ("t_c", "gamma", "eta", "alpha", "omega_c", "beta")


@dataclass(frozen=True)
class BathModel:
    """Tagged descriptor of a dephasing law.

    Only the parameters required by ``kind`` may be set:
    t_c (isolated), gamma (markovian, 1/s), eta (nonmarkovian, 1/s^2),
    alpha/omega_c/beta (ohmic: dimensionless coupling, cutoff frequency
    in rad/s, inverse bath temperature in s).
    """

    kind: BathKind
    t_c: float | None = None
    gamma: float | None = None
    eta: float | None = None
    alpha: float | None = None
    omega_c: float | None = None
    beta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", BathKind(self.kind))
        required = _REQUIRED[self.kind]
        for name in _FIELDS:
            value = getattr(self, name)
            if name in required:
                if value is None:
                    raise ValidationError(
                        f"{self.kind.value} model requires field '{name}'"
                    )
                if not value > 0.0:
                    raise ValidationError(
                        f"field '{name}' must be strictly positive, got {value!r}"
                    )
                object.__setattr__(self, name, float(value))
            elif value is not None:
                raise ValidationError(
                    f"field '{name}' is not used by a {self.kind.value} model"
                )

    @classmethod
    def isolated(cls, t_c: float) -> "BathModel":
        return cls(BathKind.ISOLATED, t_c=t_c)

    @classmethod
    def markovian(cls, gamma: float) -> "BathModel":
        return cls(BathKind.MARKOVIAN, gamma=gamma)

    @classmethod
    def nonmarkovian(cls, eta: float) -> "BathModel":
        return cls(BathKind.NONMARKOVIAN, eta=eta)

    @classmethod
    def ohmic(cls, alpha: float, omega_c: float, beta: float) -> "BathModel":
        return cls(BathKind.OHMIC, alpha=alpha, omega_c=omega_c, beta=beta)

    def to_dict(self) -> dict:
        """JSON-ready form: {"kind": ..., <required parameters>}."""
        out = {"kind": self.kind.value}
        for name in _REQUIRED[self.kind]:
            out[name] = getattr(self, name)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BathModel":
        if not isinstance(data, dict):
            raise ValidationError(f"bath model must be an object, got {type(data).__name__}")
        if "kind" not in data:
            raise ValidationError("bath model is missing field 'kind'")
        try:
            kind = BathKind(data["kind"])
        except ValueError:
            valid = ", ".join(k.value for k in BathKind)
            raise ValidationError(
                f"unknown bath kind {data['kind']!r} (expected one of: {valid})"
            ) from None
        params = {}
        for name, value in data.items():
            if name == "kind":
                continue
            if name not in _FIELDS:
                raise ValidationError(f"unknown bath model field '{name}'")
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValidationError(f"bath model field '{name}' must be a number")
            params[name] = float(value)
        return cls(kind, **params)


def _log_sinhc(x: float) -> float:
    """ln(sinh(x)/x), stable over many decades of x.

    Large x would overflow sinh; small x loses the result to log
    cancellation.  Uses sinh(x) = e^x (1 - e^{-2x})/2 for x > 20 and the
    Taylor series x^2/6 - x^4/180 + x^6/2835 below 1e-2 (truncation
    there is under one ulp).
    """
    if x == 0.0:
        return 0.0
    if x < 1e-2:
        x2 = x * x
        return x2 / 6.0 - x2 * x2 / 180.0 + x2 * x2 * x2 / 2835.0
    if x > 20.0:
        return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0 * x)
    return math.log(math.sinh(x)) - math.log(x)


def _dlog_sinhc(x: float) -> float:
    """d/dx ln(sinh(x)/x) = coth(x) - 1/x."""
    if x == 0.0:
        return 0.0
    if x < 1e-2:
        x2 = x * x
        return x / 3.0 - x * x2 / 45.0 + 2.0 * x * x2 * x2 / 945.0
    return 1.0 / math.tanh(x) - 1.0 / x


def decay_exponent(model: BathModel, tau: float) -> float:
    """Accumulated dephasing exponent Gamma(tau) for one probe particle."""
    if tau < 0.0:
        raise DomainError(f"sensing time must be non-negative, got {tau!r}")
    if model.kind is BathKind.ISOLATED:
        return 0.0
    if model.kind is BathKind.MARKOVIAN:
        return model.gamma * tau
    if model.kind is BathKind.NONMARKOVIAN:
        return model.eta * tau * tau
    # ohmic; both log terms vanish exactly at tau = 0
    if tau == 0.0:
        return 0.0
    wt = model.omega_c * tau
    return 0.5 * model.alpha * math.log1p(wt * wt) + model.alpha * _log_sinhc(
        math.pi * tau / model.beta
    )


def decay_exponent_derivative(model: BathModel, tau: float) -> float:
    """dGamma/dtau.  At tau = 0 the Ohmic form returns its analytic limit 0."""
    if tau < 0.0:
        raise DomainError(f"sensing time must be non-negative, got {tau!r}")
    if model.kind is BathKind.ISOLATED:
        return 0.0
    if model.kind is BathKind.MARKOVIAN:
        return model.gamma
    if model.kind is BathKind.NONMARKOVIAN:
        return 2.0 * model.eta * tau
    if tau == 0.0:
        return 0.0
    wt = model.omega_c * tau
    cutoff_term = model.alpha * model.omega_c * wt / (1.0 + wt * wt)
    thermal_term = model.alpha * (math.pi / model.beta) * _dlog_sinhc(
        math.pi * tau / model.beta
    )
    return cutoff_term + thermal_term


@lru_cache(maxsize=512)
def coherence_time(model: BathModel) -> float:
    """Single-particle coherence time t_c.

    Isolated models return the configured t_c; the two limiting laws give
    1/gamma and 1/sqrt(eta).  For the full Ohmic law the convention used
    here is the time at which Gamma first reaches 1, located by bisection
    (the two limits of that convention recover 1/gamma and 1/sqrt(eta));
    cached, since sweeps ask for it per grid point.
    """
    if model.kind is BathKind.ISOLATED:
        return model.t_c
    if model.kind is BathKind.MARKOVIAN:
        return 1.0 / model.gamma
    if model.kind is BathKind.NONMARKOVIAN:
        return 1.0 / math.sqrt(model.eta)
    lo = 1e-12 * model.beta
    hi = 1e12 * model.beta
    if decay_exponent(model, lo) >= 1.0:
        raise SolverError(
            "Ohmic coherence time lies below the bisection bracket; "
            "the coupling is too strong for this convention"
        )
    for _ in range(200):
        if decay_exponent(model, hi) >= 1.0:
            break
        hi *= 2.0
    else:
        raise SolverError(
            "Ohmic decay exponent never reaches 1 inside the expanded bracket"
        )
    while hi - lo > 1e-12 * hi:
        mid = 0.5 * (lo + hi)
        if decay_exponent(model, mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ohmic_limit_rates(alpha: float, beta: float, omega_c: float) -> tuple[float, float]:
    """Rates of the two limiting laws of the Ohmic exponent.

    Returns (gamma, eta) = (alpha*pi/beta, alpha*omega_c**2/2): the
    Markovian rate reached for tau >> beta and the quadratic-law
    coefficient reached for tau << beta with omega_c*tau << 1.
    """
    if alpha < 0.0:
        raise DomainError(f"coupling alpha must be non-negative, got {alpha!r}")
    if not beta > 0.0:
        raise DomainError(f"inverse temperature beta must be positive, got {beta!r}")
    if not omega_c > 0.0:
        raise DomainError(f"cutoff frequency omega_c must be positive, got {omega_c!r}")
    return alpha * math.pi / beta, alpha * omega_c * omega_c / 2.0
