"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: validation/domain problems
exit with 2, infeasible timing with 3, solver failures with 4.
"""


class GhzGainError(Exception):
    """Base class for all package-specific errors."""


class DomainError(GhzGainError, ValueError):
    """An argument is outside its mathematical domain (e.g. negative time)."""


class CapacityError(GhzGainError, ValueError):
    """A brute-force path was asked for more qubits than it supports."""


class ValidationError(GhzGainError, ValueError):
    """A matrix, model or configuration fails its structural invariants."""


class UnsupportedModelError(GhzGainError, ValueError):
    """The requested operation is undefined for this bath model."""


class InfeasibleTimingError(GhzGainError):
    """Preparation plus readout time leaves no room for sensing."""


class SolverError(GhzGainError):
    """A numerical solver failed to produce a trustworthy result."""


class BranchError(SolverError):
    """The closed-form cubic produced no valid (real, positive) root.

    Carries all three cube-root candidates for diagnosis.
    """

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class DivergenceError(SolverError):
    """Bracket expansion exceeded its hard limit without bracketing a maximum."""


class NoThresholdError(SolverError):
    """No r = 1 crossing exists inside the search bracket.

    ``side`` records whether the gain stayed above or below 1 throughout.
    """

    def __init__(self, message, side=None):
        super().__init__(message)
        self.side = side
