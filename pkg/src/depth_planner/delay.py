"""Delay strategy: defenses that buy time instead of stopping attacks cold.

Two time-based defender plays are modeled.

Whack-a-mole: attackers defeat defenses at rate N/(tau_F + tau_B) (finding
plus breaking) while each broken defense is independently restored after a
detect-plus-repair lag, giving the mean broken count

    dn_B/dt = N/(tau_F + tau_B) - n_B/(tau_D + tau_R)
    n_B(t)  = N * (tau_D + tau_R)/(tau_F + tau_B) * (1 - exp(-t/(tau_D + tau_R)))

The curve saturates at N*(tau_D+tau_R)/(tau_F+tau_B); keeping strictly more
defenses installed than that means the attacker never holds them all broken
at once, in expectation.

Stealth detection: an attacker must survive n observation stages of length
tau_a, each watched by a detector firing as a Poisson event at rate lambda.
Per-stage discovery probability is 1 - exp(-lambda*tau_a), a single attacker
survives all stages with probability exp(-lambda*tau_a*n), and attacker
aggregation mirrors the blockade module:

    L = 1 - g**(N-1) * (1 - exp(-lambda*tau_a*n))**N

Only the product x = lambda*tau_a matters, so detector quality, observation
window, and stage count are interchangeable levers at fixed x*n. Pricing
mirrors the blockade price curve with capability x in place of hardness:
P_each = A' / (x_best - x), diverging at the best achievable x_best.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .blockade import SpendClass, _check_range, _check_steps, _classify
from .core import (
    Probability,
    ThreatModel,
    Tolerances,
    combine_attackers,
    _require_finite,
    _require_nonnegative,
    _require_open_unit,
    _require_positive,
)
from .errors import DomainError, InfeasibleTarget, InvalidRange
from .search import grid_seeded_minimize
from .series import CurveSeries, SurfaceSeries, Trajectory

__all__ = [
    "DelayTimescales",
    "DetectionModel",
    "DelayCostModel",
    "DelayVerdict",
    "broken_defenses_at",
    "trajectory",
    "min_defenses_whackamole",
    "detection_probability",
    "stealth_likelihood",
    "stealth_sensitivity",
    "solve_stealth_defense_count",
    "stealth_indifference",
    "stealth_surface",
    "optimize_delay",
]

_EPS = 1e-12


@dataclass(frozen=True, slots=True)
class DelayTimescales:
    """Mean times for the repair race: find/break on offense, detect/repair
    on defense. All strictly positive, in one common time unit."""

    find_time: float
    break_time: float
    detect_time: float
    repair_time: float

    def __post_init__(self) -> None:
        for name in ("find_time", "break_time", "detect_time", "repair_time"):
            object.__setattr__(self, name, _require_positive(getattr(self, name), name))

    @property
    def attack_period(self) -> float:
        return self.find_time + self.break_time

    @property
    def defend_period(self) -> float:
        return self.detect_time + self.repair_time


@dataclass(frozen=True, slots=True)
class DetectionModel:
    """Poisson detection at rate lambda over observation stages of length tau_a.

    detect_rate 0 is admitted as the degenerate blind-defender case; the
    inversion operations additionally require it to be positive.
    """

    detect_rate: float
    stage_time: float

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "detect_rate", _require_nonnegative(self.detect_rate, "detect_rate")
        )
        object.__setattr__(
            self, "stage_time", _require_positive(self.stage_time, "stage_time")
        )

    @property
    def capability(self) -> float:
        """Dimensionless exposure x = lambda * tau_a per stage."""
        return self.detect_rate * self.stage_time


@dataclass(frozen=True, slots=True)
class DelayCostModel:
    """Per-defense price A' / (x_best - x) over capability x, plus budget."""

    unit_scale: float
    best_capability: float
    budget: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit_scale", _require_positive(self.unit_scale, "unit_scale"))
        object.__setattr__(
            self, "best_capability", _require_positive(self.best_capability, "best_capability")
        )
        object.__setattr__(self, "budget", _require_positive(self.budget, "budget"))


@dataclass(frozen=True, slots=True)
class DelayVerdict:
    """Cheapest (n, x) posture meeting the target, compared to the budget."""

    classification: SpendClass
    defense_count: float
    capability: float  # x = lambda * tau_a
    minimal_cost: float
    surplus: float


def broken_defenses_at(t: float, timescales: DelayTimescales, attackers: int = 1) -> float:
    """Mean number of simultaneously broken defenses at time t."""
    t = _require_nonnegative(t, "t")
    if not isinstance(attackers, int) or attackers < 1:
        raise DomainError(f"attackers must be an integer >= 1, got {attackers!r}")
    ratio = timescales.defend_period / timescales.attack_period
    return attackers * (ratio * -math.expm1(-t / timescales.defend_period))


def trajectory(
    timescales: DelayTimescales, attackers: int, t_max: float, steps: int
) -> Trajectory:
    """Sample the mean broken-defense curve on [0, t_max]."""
    t_max = _require_positive(t_max, "t_max")
    steps = _check_steps(steps)
    step = t_max / (steps - 1)
    points = tuple(
        (i * step, broken_defenses_at(i * step, timescales, attackers))
        for i in range(steps)
    )
    return Trajectory(points)


def min_defenses_whackamole(timescales: DelayTimescales, attackers: int = 1) -> int:
    """Fewest installed defenses strictly exceeding the saturation level
    N*(tau_D+tau_R)/(tau_F+tau_B), so some defense is always standing."""
    if not isinstance(attackers, int) or attackers < 1:
        raise DomainError(f"attackers must be an integer >= 1, got {attackers!r}")
    saturation = attackers * timescales.defend_period / timescales.attack_period
    return math.floor(saturation) + 1


def detection_probability(detection: DetectionModel) -> Probability:
    """Chance a single observation stage discovers the attacker:
    integral of lambda*exp(-lambda*t) over one stage, 1 - exp(-lambda*tau_a)."""
    return Probability(-math.expm1(-detection.capability))


def stealth_likelihood(
    detection: DetectionModel, defense_count: float, threat: ThreatModel
) -> Probability:
    """Breach likelihood when each defense adds one observation stage:
    L = 1 - g**(N-1) * (1 - exp(-lambda*tau_a*n))**N."""
    n = _require_nonnegative(defense_count, "defense_count")
    q = -math.expm1(-detection.capability * n)
    return combine_attackers(q, threat)


def stealth_sensitivity(detection: DetectionModel, defense_count: float) -> float:
    """Marginal gain of one more stage for a single attacker:
    d(1-L)/dn = lambda*tau_a * exp(-lambda*tau_a*n). Largest at n = 0."""
    n = _require_nonnegative(defense_count, "defense_count")
    x = detection.capability
    return x * math.exp(-x * n)


def _log_allfail_target(target_l: float, threat: ThreatModel) -> float:
    # Same aggregation inverse as the blockade module, reproduced here to
    # keep the two strategies' solvers independently readable.
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


def _stage_exponent(target_l: float, threat: ThreatModel) -> float:
    """K such that n = K / (lambda*tau_a) meets the target:
    K = -ln(1 - ((1-L)/g**(N-1))**(1/N))."""
    log_a = _log_allfail_target(target_l, threat)
    return -math.log(-math.expm1(log_a / threat.attacker_count))


def solve_stealth_defense_count(
    target_l: float, detection: DetectionModel, threat: ThreatModel
) -> float:
    """Stages needed to push the breach likelihood down to ``target_l``:
    n = -ln(1 - ((1-L)/g**(N-1))**(1/N)) / (lambda*tau_a)."""
    x = detection.capability
    if x <= 0.0:
        raise DomainError(
            f"detect_rate * stage_time must be positive to solve for stages, got {x!r}"
        )
    return _stage_exponent(target_l, threat) / x


def stealth_indifference(
    target_l: float, threat: ThreatModel, x_range, steps: int
) -> CurveSeries:
    """Sample (x, n) pairs with equal breach likelihood, x = lambda*tau_a.

    The curve is the hyperbola n = K/x: double the per-stage exposure and
    half the stages buy the same protection.
    """
    lo, hi = _check_range(x_range, "x_range", 0.0, math.inf)
    if lo <= 0.0:
        raise InvalidRange(f"x_range must be positive, got ({lo!r}, {hi!r})")
    steps = _check_steps(steps)
    k = _stage_exponent(target_l, threat)
    step = (hi - lo) / (steps - 1)
    points = tuple((lo + i * step, k / (lo + i * step)) for i in range(steps))
    return CurveSeries("x", "n", points)


def stealth_surface(
    target_l: float,
    threat: ThreatModel,
    lambda_range,
    lambda_steps: int,
    tau_a_range,
    tau_a_steps: int,
) -> SurfaceSeries:
    """Sample required stages over a (lambda, tau_a) grid, lambda-major order."""
    llo, lhi = _check_range(lambda_range, "lambda_range", 0.0, math.inf)
    tlo, thi = _check_range(tau_a_range, "tau_a_range", 0.0, math.inf)
    if llo <= 0.0 or tlo <= 0.0:
        raise InvalidRange("lambda_range and tau_a_range must be positive")
    lambda_steps = _check_steps(lambda_steps)
    tau_a_steps = _check_steps(tau_a_steps)
    k = _stage_exponent(target_l, threat)

    lstep = (lhi - llo) / (lambda_steps - 1)
    tstep = (thi - tlo) / (tau_a_steps - 1)
    points = []
    for i in range(lambda_steps):
        lam = llo + i * lstep
        for j in range(tau_a_steps):
            tau = tlo + j * tstep
            points.append((lam, tau, k / (lam * tau)))
    return SurfaceSeries("lambda", "tau_a", "n", tuple(points))


def optimize_delay(
    target_l: float,
    threat: ThreatModel,
    cost_model: DelayCostModel,
    tol: Tolerances = Tolerances(),
    integer_mode: bool = False,
    price=None,
) -> DelayVerdict:
    """Cheapest capability-and-count mix meeting ``target_l``.

    Minimizes C(x) = (K/x) * P_each(x) over x in (eps, x_best - eps) with
    the default price P_each = A'/(x_best - x); pass ``price`` (a callable
    x -> unit price) to substitute a bespoke monotone price table.
    ``integer_mode`` rounds the stage count and re-derives x = K/n.
    """
    k = _stage_exponent(target_l, threat)
    x_best = cost_model.best_capability

    if price is None:
        def price_at(x: float) -> float:
            return cost_model.unit_scale / (x_best - x)
    else:
        price_at = price

    def cost_at(x: float) -> float:
        unit = price_at(x)
        if not math.isfinite(unit) or unit <= 0.0:
            return math.inf
        return (k / x) * unit

    lo, hi = _EPS, x_best - _EPS
    if lo >= hi:
        raise InfeasibleTarget(f"best_capability {x_best!r} leaves no admissible x")
    x_star, c_star = grid_seeded_minimize(cost_at, lo, hi, tol.grid_steps)
    if math.isinf(c_star):
        raise InfeasibleTarget(
            f"no capability below x_best={x_best!r} has a finite positive price"
        )

    if not integer_mode:
        classification, surplus = _classify(c_star, cost_model.budget, tol)
        return DelayVerdict(classification, k / x_star, x_star, c_star, surplus)

    n_cont = k / x_star
    candidates = sorted({math.floor(n_cont), math.ceil(n_cont), math.ceil(n_cont) + 1} - {0})
    best = None
    for n in candidates:
        if n < 1:
            continue
        x_n = k / n
        if x_n >= x_best:
            continue  # even the best detector cannot pack K into n stages
        unit = price_at(x_n)
        if not math.isfinite(unit) or unit <= 0.0:
            continue
        c_n = n * unit
        if best is None or c_n < best[2]:
            best = (n, x_n, c_n)
    if best is None:
        raise InfeasibleTarget(
            f"required capability exceeds best_capability {x_best!r} "
            f"at every integer stage count near {n_cont!r}"
        )
    n, x_n, c_n = best
    classification, surplus = _classify(c_n, cost_model.budget, tol)
    return DelayVerdict(classification, float(n), x_n, c_n, surplus)
