"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """A quantile summary violates its scenario's invariants."""


class FitInfeasibleError(RuntimeError):
    """A method-of-moments system has no solution for the requested inputs.

    Raised by parameter initialization; callers treat the affected candidate
    family as excluded rather than aborting.
    """


class EstimationError(RuntimeError):
    """An estimator could not produce a finite (mean, sd) pair."""
