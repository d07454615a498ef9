"""Quantitative planning for defense in depth.

Two defender strategies are modeled end to end:

* **Blockade** (:mod:`~depth_planner.blockade`): stop every attacker outright
  with chains of defenses; closed-form breach likelihoods with defense and
  attacker dependence, inversions for required count or hardness,
  indifference and budget curves, and a cost optimizer.
* **Delay** (:mod:`~depth_planner.delay`): accept that defenses fall and buy
  time instead; broken-defense trajectories, minimum standing counts, stealth
  detection likelihoods with their inversions and surfaces, and a matching
  optimizer.

Every closed form has an independent Monte Carlo check in
:mod:`~depth_planner.simulation`, deterministic for a fixed ``(scenario,
trials, seed)`` regardless of worker count. :mod:`~depth_planner.cli` exposes
the whole toolkit as the ``depth-planner`` command.
"""

from .core import Probability, RiskInput, ThreatModel, Tolerances, combine_attackers, risk
from .errors import (
    ChainInfeasible,
    DependenceOutOfRange,
    DomainError,
    InfeasibleTarget,
    InvalidRange,
)
from .series import CurveSeries, SurfaceSeries, Trajectory
from .blockade import (
    BlockadePosture,
    CostModel,
    PostureVerdict,
    SpendClass,
    blockade_likelihood,
    budget_curve,
    indifference_curve,
    optimize_blockade,
    price_per_defense,
    solve_defense_count,
    solve_failure_prob,
)
from .delay import (
    DelayCostModel,
    DelayTimescales,
    DelayVerdict,
    DetectionModel,
    broken_defenses_at,
    detection_probability,
    min_defenses_whackamole,
    optimize_delay,
    solve_stealth_defense_count,
    stealth_indifference,
    stealth_likelihood,
    stealth_sensitivity,
    stealth_surface,
    trajectory,
)
from .output import OutputEnvelope, emit_curve, format_number
from .simulation import (
    EstimateWithError,
    SimulationConfig,
    WhackResult,
    active_backend,
    simulate_blockade,
    simulate_stealth,
    simulate_whackamole,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Probability",
    "RiskInput",
    "ThreatModel",
    "Tolerances",
    "combine_attackers",
    "risk",
    # errors
    "DomainError",
    "DependenceOutOfRange",
    "InfeasibleTarget",
    "InvalidRange",
    "ChainInfeasible",
    # series
    "CurveSeries",
    "Trajectory",
    "SurfaceSeries",
    # blockade
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
    # delay
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
    # simulation
    "SimulationConfig",
    "EstimateWithError",
    "WhackResult",
    "active_backend",
    "simulate_blockade",
    "simulate_stealth",
    "simulate_whackamole",
    # output
    "OutputEnvelope",
    "emit_curve",
    "format_number",
]
