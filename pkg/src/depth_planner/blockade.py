"""Blockade strategy: stop attackers outright with layers of hard defenses.

A single attacker walks a chain of ``n`` defenses. The first fails with
probability ``p``; each later one fails with conditional probability ``f*p``
given that everything before it failed, so the joint all-fail probability
telescopes to ``f**(n-1) * p**n``. Dependence ``f > 1`` models defenses that
tend to fall together (monoculture), ``f < 1`` defenses that cover for each
other. Across attackers the aggregation of :func:`~.core.combine_attackers`
applies, giving

    L = 1 - g**(N-1) * (1 - f**(n-1) * p**n)**N

Chain feasibility requires ``f*p <= 1``; otherwise two defenses would fail
jointly more often than one alone, which no probability model allows.

Pricing: hardening a defense below failure probability ``p`` costs
``A / (p - p_best)`` per defense, diverging at the best achievable failure
probability ``p_best``. A budget then buys ``n = (budget/A) * (p - p_best)``
defenses at hardness ``p``, and the optimizer looks for the cheapest (n, p)
pair that still meets a target breach likelihood.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    ThreatModel,
    Tolerances,
    Probability,
    as_probability,
    combine_attackers,
    _require_finite,
    _require_nonnegative,
    _require_open_unit,
    _require_positive,
)
from .errors import DependenceOutOfRange, DomainError, InfeasibleTarget, InvalidRange
from .search import grid_seeded_minimize
from .series import CurveSeries

__all__ = [
    "BlockadePosture",
    "CostModel",
    "PostureVerdict",
    "SpendClass",
    "blockade_likelihood",
    "solve_defense_count",
    "solve_failure_prob",
    "indifference_curve",
    "budget_curve",
    "price_per_defense",
    "optimize_blockade",
]

# Guard band keeping searches away from price and feasibility asymptotes.
_EPS = 1e-12
_JOINT_SLACK = 1e-12


@dataclass(frozen=True, slots=True)
class BlockadePosture:
    """Defense count n (real on curves, integer in deployed postures),
    per-defense failure probability p, and defense dependence f."""

    defense_count: float
    failure_prob: float
    defense_dependence: float = 1.0

    def __post_init__(self) -> None:
        n = _require_nonnegative(self.defense_count, "defense_count")
        p = as_probability(self.failure_prob, "failure_prob")
        f = _require_nonnegative(self.defense_dependence, "defense_dependence")
        if f * p > 1.0 + _JOINT_SLACK:
            raise DependenceOutOfRange(
                f"chain conditional f*p = {f * p!r} exceeds 1 (f={f!r}, p={p!r})"
            )
        object.__setattr__(self, "defense_count", n)
        object.__setattr__(self, "failure_prob", p)
        object.__setattr__(self, "defense_dependence", f)


@dataclass(frozen=True, slots=True)
class CostModel:
    """Per-defense price curve A/(p - p_best) plus the available budget."""

    unit_scale: float
    best_failure_prob: float
    budget: float

    def __post_init__(self) -> None:
        a = _require_positive(self.unit_scale, "unit_scale")
        pb = as_probability(self.best_failure_prob, "best_failure_prob")
        if pb >= 1.0:
            raise DomainError(f"best_failure_prob must be < 1, got {pb!r}")
        b = _require_positive(self.budget, "budget")
        object.__setattr__(self, "unit_scale", a)
        object.__setattr__(self, "best_failure_prob", pb)
        object.__setattr__(self, "budget", b)


class SpendClass(enum.Enum):
    UNDERSPENDING = "underspending"
    OVERSPENDING = "overspending"
    OPTIMAL = "optimal"


@dataclass(frozen=True, slots=True)
class PostureVerdict:
    """Cheapest posture meeting the target, and how it compares to the budget."""

    classification: SpendClass
    optimal_posture: BlockadePosture
    minimal_cost: float
    surplus: float  # budget - minimal_cost; negative means shortfall


def _single_attacker_success(n: float, p: float, f: float) -> float:
    """Joint probability that all n defenses fail for one attacker."""
    if n == 0.0:
        return 1.0  # nothing in the way
    if p == 0.0:
        return 0.0
    if f == 1.0:
        # Independent-defense path; bitwise identical to 1-(1-p**n)**N usage.
        s = p**n
    else:
        if f * p == 0.0 and n < 1.0:
            raise DomainError(
                f"joint failure undefined for f={f!r} with fractional defense_count {n!r}"
            )
        s = p * (f * p) ** (n - 1.0)
    if s > 1.0 + _JOINT_SLACK or (n >= 1.0 and s > p + _JOINT_SLACK):
        raise DependenceOutOfRange(
            f"joint failure f**(n-1)*p**n = {s!r} is not a probability "
            f"(p={p!r}, n={n!r}, f={f!r})"
        )
    return min(s, 1.0)


def blockade_likelihood(posture: BlockadePosture, threat: ThreatModel) -> Probability:
    """Breach likelihood L = 1 - g**(N-1) * (1 - f**(n-1) * p**n)**N."""
    s = _single_attacker_success(
        posture.defense_count, posture.failure_prob, posture.defense_dependence
    )
    return combine_attackers(1.0 - s, threat)


def _log_allfail_target(target_l: float, threat: ThreatModel) -> float:
    """log of (1-L)/g**(N-1), the per-attacker failure probability to hit.

    Positive means the attacker dependence alone already overshoots the
    target, which no defense count can fix.
    """
    target_l = _require_open_unit(target_l, "L")
    g = threat.attacker_dependence
    log_a = math.log1p(-target_l)
    if threat.attacker_count > 1:
        if g == 0.0:
            raise InfeasibleTarget(
                "attacker_dependence 0 forces a certain breach for N >= 2; "
                "no target below 1 is reachable"
            )
        log_a -= (threat.attacker_count - 1) * math.log(g)
    if log_a >= 0.0:
        raise InfeasibleTarget(
            f"target L={target_l!r} is unreachable: (1-L)/g**(N-1) = "
            f"{math.exp(log_a)!r} >= 1 leaves no room for attacker failures"
        )
    return log_a


def _required_success(target_l: float, threat: ThreatModel) -> float:
    """Per-attacker success probability y that meets the target exactly."""
    log_a = _log_allfail_target(target_l, threat)
    return -math.expm1(log_a / threat.attacker_count)


def solve_defense_count(
    p: float, target_l: float, threat: ThreatModel, f: float = 1.0
) -> float:
    """Defenses needed so the breach likelihood equals ``target_l``.

    Inverts the likelihood in n:  n = ln(f*y) / ln(f*p)  with
    y = 1 - ((1-L)/g**(N-1))**(1/N).
    """
    p = as_probability(p, "p")
    p = _require_open_unit(p, "p")
    f = _require_positive(f, "f")
    y = _required_success(target_l, threat)

    fp = f * p
    if fp >= 1.0:
        raise InfeasibleTarget(
            f"f*p = {fp!r} >= 1: extra defenses no longer reduce the joint failure"
        )
    fy = f * y
    if fy >= 1.0:
        raise InfeasibleTarget(
            f"required per-attacker success {y!r} exceeds the chain ceiling 1/f = {1.0 / f!r}"
        )
    return math.log(fy) / math.log(fp)


def solve_failure_prob(defense_count: float, target_l: float, threat: ThreatModel) -> Probability:
    """Per-defense failure probability meeting the target with independent
    defenses (f = 1):  p = y**(1/n)."""
    n = _require_positive(defense_count, "defense_count")
    y = _required_success(target_l, threat)
    return Probability(math.exp(math.log(y) / n))


def _check_range(rng, name: str, lo_bound: float, hi_bound: float):
    try:
        lo, hi = (float(rng[0]), float(rng[1]))
    except (TypeError, IndexError) as exc:
        raise InvalidRange(f"{name} must be a (low, high) pair, got {rng!r}") from exc
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidRange(f"{name} must satisfy low < high, got ({lo!r}, {hi!r})")
    if lo < lo_bound or hi > hi_bound:
        raise InvalidRange(
            f"{name} must lie within [{lo_bound!r}, {hi_bound!r}], got ({lo!r}, {hi!r})"
        )
    return lo, hi


def _check_steps(steps: int) -> int:
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 2:
        raise DomainError(f"steps must be an integer >= 2, got {steps!r}")
    return steps


def indifference_curve(
    target_l: float, threat: ThreatModel, f: float, p_range, steps: int
) -> CurveSeries:
    """Sample (p, n) pairs that all meet the same breach likelihood.

    Grid points where the inversion is infeasible (for instance p >= 1/f)
    are omitted; the emitted series covers the feasible sub-range.
    """
    lo, hi = _check_range(p_range, "p_range", 0.0, 1.0)
    if lo <= 0.0 or hi >= 1.0:
        raise InvalidRange(f"p_range must lie strictly inside (0,1), got ({lo!r}, {hi!r})")
    steps = _check_steps(steps)
    _require_open_unit(target_l, "L")

    points = []
    step = (hi - lo) / (steps - 1)
    for i in range(steps):
        p = lo + i * step
        try:
            points.append((p, solve_defense_count(p, target_l, threat, f)))
        except InfeasibleTarget:
            continue
    if not points:
        raise InvalidRange("no feasible points in range")
    return CurveSeries("p", "n", tuple(points))


def budget_curve(cost_model: CostModel, p_range, steps: int) -> CurveSeries:
    """Defense count a fixed budget affords at each failure probability:
    n = (budget/A) * (p - p_best), linear in p."""
    lo, hi = _check_range(p_range, "p_range", 0.0, 1.0)
    if lo < cost_model.best_failure_prob:
        raise InvalidRange(
            f"p_range low {lo!r} dips below best_failure_prob "
            f"{cost_model.best_failure_prob!r}"
        )
    steps = _check_steps(steps)

    scale = cost_model.budget / cost_model.unit_scale
    step = (hi - lo) / (steps - 1)
    points = tuple(
        (lo + i * step, scale * ((lo + i * step) - cost_model.best_failure_prob))
        for i in range(steps)
    )
    return CurveSeries("p", "n", points)


def price_per_defense(cost_model: CostModel, p: float) -> float:
    """Unit price A / (p - p_best); diverges at the technology floor p_best."""
    p = as_probability(p, "p")
    if p <= cost_model.best_failure_prob:
        raise InvalidRange(
            f"p = {p!r} must exceed best_failure_prob {cost_model.best_failure_prob!r}"
        )
    return cost_model.unit_scale / (p - cost_model.best_failure_prob)


def _classify(cost: float, budget: float, tol: Tolerances) -> tuple:
    if cost > budget * (1.0 + tol.budget_match_rel):
        return SpendClass.UNDERSPENDING, budget - cost
    if cost < budget * (1.0 - tol.budget_match_rel):
        return SpendClass.OVERSPENDING, budget - cost
    return SpendClass.OPTIMAL, budget - cost


def optimize_blockade(
    target_l: float,
    threat: ThreatModel,
    f: float,
    cost_model: CostModel,
    tol: Tolerances = Tolerances(),
    integer_mode: bool = False,
) -> PostureVerdict:
    """Cheapest posture meeting ``target_l``: minimize n(p) * price(p) over p.

    The search band is (p_best + eps, min(1, 1/f) - eps), seeded with a
    coarse grid and refined by golden section. ``integer_mode`` rounds the
    continuous optimum to nearby whole defense counts, re-solves p for each,
    and keeps the cheapest feasible one.
    """
    f = _require_positive(f, "f")
    _require_open_unit(target_l, "L")

    lo = cost_model.best_failure_prob + _EPS
    hi = min(1.0, 1.0 / f) - _EPS
    if lo >= hi:
        raise InfeasibleTarget(
            f"no admissible p between best_failure_prob {cost_model.best_failure_prob!r} "
            f"and the dependence ceiling {min(1.0, 1.0 / f)!r}"
        )

    def cost_at(p: float) -> float:
        try:
            n = solve_defense_count(p, target_l, threat, f)
        except InfeasibleTarget:
            return math.inf
        return n * price_per_defense(cost_model, p)

    p_star, c_star = grid_seeded_minimize(cost_at, lo, hi, tol.grid_steps)
    if math.isinf(c_star):
        raise InfeasibleTarget(
            f"target L={target_l!r} is unreachable for every p in "
            f"({lo!r}, {hi!r}) at f={f!r}"
        )

    if not integer_mode:
        n_star = solve_defense_count(p_star, target_l, threat, f)
        posture = BlockadePosture(n_star, p_star, f)
        classification, surplus = _classify(c_star, cost_model.budget, tol)
        return PostureVerdict(classification, posture, c_star, surplus)

    n_cont = solve_defense_count(p_star, target_l, threat, f)
    y = _required_success(target_l, threat)
    candidates = sorted(
        {math.floor(n_cont), math.ceil(n_cont), math.ceil(n_cont) + 1} - {0}
    )
    best = None
    for n in candidates:
        if n < 1:
            continue
        # Exact inversion of f**(n-1) * p**n = y.
        p_n = (f * y) ** (1.0 / n) / f
        if not cost_model.best_failure_prob < p_n < 1.0 or f * p_n > 1.0:
            continue
        c_n = n * price_per_defense(cost_model, p_n)
        if best is None or c_n < best[2]:
            best = (n, p_n, c_n)
    if best is None:
        raise InfeasibleTarget(
            f"no integer defense count near {n_cont!r} admits a feasible p"
        )
    n, p_n, c_n = best
    posture = BlockadePosture(float(n), p_n, f)
    classification, surplus = _classify(c_n, cost_model.budget, tol)
    return PostureVerdict(classification, posture, c_n, surplus)
