"""Exception types shared across the planner.

Everything derives from :class:`DomainError` (a ``ValueError``) so callers
can catch one base class. The subclasses separate "your numbers are outside
the model" from "the model cannot reach your target", which matters for
exit-code mapping in the command line front end.
"""

__all__ = [
    "DomainError",
    "DependenceOutOfRange",
    "InfeasibleTarget",
    "InvalidRange",
    "ChainInfeasible",
]


class DomainError(ValueError):
    """An argument violates a model precondition."""


class DependenceOutOfRange(DomainError):
    """A dependence factor pushes a joint probability outside [0, 1]."""


class InfeasibleTarget(DomainError):
    """No admissible posture reaches the requested breach likelihood."""


class InvalidRange(DomainError):
    """A sweep or price query lies outside its admissible interval."""


class ChainInfeasible(DomainError):
    """A conditional probability in the sampling chain leaves [0, 1]."""
