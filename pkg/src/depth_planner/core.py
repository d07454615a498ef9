"""Core risk model: validated value types and attacker aggregation.

The model prices a security posture by

    risk = impact x likelihood

where the likelihood of at least one breach across ``N`` attackers follows
from the per-attacker failure probability ``q`` (the chance that a single
attacker is stopped) and an attacker-level dependence factor ``g``:

    L_N = 1 - g**(N-1) * q**N

``g = 1`` recovers independent attackers, ``g > 1`` means attackers tend to
fail together (shared tooling, shared blind spots), ``g < 1`` means one
attacker's failure makes another's success more likely. The joint all-fail
probability ``g**(N-1) * q**N`` must stay inside [0, 1]; anything else is a
misconfigured dependence and is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DependenceOutOfRange, DomainError

__all__ = [
    "Probability",
    "ThreatModel",
    "RiskInput",
    "Tolerances",
    "risk",
    "combine_attackers",
]

# Slack for joint probabilities that exceed 1 by rounding only.
_JOINT_SLACK = 1e-12


def _require_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _require_positive(value: float, name: str) -> float:
    value = _require_finite(value, name)
    if value <= 0.0:
        raise DomainError(f"{name} must be positive, got {value!r}")
    return value


def _require_nonnegative(value: float, name: str) -> float:
    value = _require_finite(value, name)
    if value < 0.0:
        raise DomainError(f"{name} must be nonnegative, got {value!r}")
    return value


def as_probability(value, name: str = "probability") -> float:
    """Validate ``value`` as a probability and return it as a float.

    Accepts plain numbers or :class:`Probability`. Rejects non-finite
    values and anything outside [0, 1].
    """
    if isinstance(value, Probability):
        return value.value
    value = _require_finite(value, name)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0,1], got {value!r}")
    return value


def _require_open_unit(value: float, name: str) -> float:
    """Validate a probability that must lie strictly inside (0, 1)."""
    value = _require_finite(value, name)
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie in (0,1), got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class Probability:
    """A probability validated at construction: finite and within [0, 1]."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", as_probability(self.value, "value"))

    def __float__(self) -> float:
        return self.value

    def complement(self) -> "Probability":
        return Probability(1.0 - self.value)


@dataclass(frozen=True, slots=True)
class ThreatModel:
    """How many attackers there are and how correlated their failures are.

    attacker_count
        N >= 1, integer.
    attacker_dependence
        g >= 0. Multiplies each conditional failure probability after the
        first attacker, so the joint all-fail probability is g**(N-1)*q**N.
    """

    attacker_count: int = 1
    attacker_dependence: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.attacker_count, int) or isinstance(self.attacker_count, bool):
            raise DomainError(
                f"attacker_count must be an integer, got {self.attacker_count!r}"
            )
        if self.attacker_count < 1:
            raise DomainError(
                f"attacker_count must be >= 1, got {self.attacker_count!r}"
            )
        object.__setattr__(
            self,
            "attacker_dependence",
            _require_nonnegative(self.attacker_dependence, "attacker_dependence"),
        )


@dataclass(frozen=True, slots=True)
class RiskInput:
    """Impact (any nonnegative unit: dollars, downtime, lives) and breach likelihood."""

    impact: float
    likelihood: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "impact", _require_nonnegative(self.impact, "impact"))
        object.__setattr__(
            self, "likelihood", as_probability(self.likelihood, "likelihood")
        )


@dataclass(frozen=True, slots=True)
class Tolerances:
    """Numeric knobs shared by solvers and optimizers.

    rel_tol
        Relative tolerance for round-trip and convergence checks.
    budget_match_rel
        Relative band within which a cost counts as matching the budget.
    grid_steps
        Grid resolution used to seed bracketed 1-D searches.
    """

    rel_tol: float = 1e-9
    budget_match_rel: float = 1e-3
    grid_steps: int = 256

    def __post_init__(self) -> None:
        object.__setattr__(self, "rel_tol", _require_positive(self.rel_tol, "rel_tol"))
        object.__setattr__(
            self,
            "budget_match_rel",
            _require_positive(self.budget_match_rel, "budget_match_rel"),
        )
        if not isinstance(self.grid_steps, int) or self.grid_steps < 2:
            raise DomainError(f"grid_steps must be an integer >= 2, got {self.grid_steps!r}")


def risk(risk_input: RiskInput) -> float:
    """Expected loss: impact times breach likelihood."""
    return risk_input.impact * risk_input.likelihood


def combine_attackers(single_fail_prob, threat: ThreatModel) -> Probability:
    """Breach likelihood across all attackers from one attacker's failure probability.

    L = 1 - g**(N-1) * q**N, the complement of every attacker failing.
    Raises DependenceOutOfRange if the dependence factor pushes the joint
    all-fail probability above 1.
    """
    q = as_probability(single_fail_prob, "single_fail_prob")
    n_attackers = threat.attacker_count
    g = threat.attacker_dependence

    joint = g ** (n_attackers - 1) * q**n_attackers
    if joint > 1.0 + _JOINT_SLACK:
        raise DependenceOutOfRange(
            "joint all-fail probability "
            f"g**(N-1)*q**N = {joint!r} exceeds 1 (q={q!r}, N={n_attackers}, g={g!r})"
        )
    return Probability(1.0 - min(joint, 1.0))
