"""Monte Carlo counterparts of the analytic breach models.

These simulators reproduce the models event by event, independently of the
closed forms, so analytic results can be checked statistically:

* ``simulate_blockade``: each trial walks attacker 1 through the defense
  chain (first failure probability p, then f*p conditional on everything
  before failing); attackers 2..N fail with conditional probability g*q
  given all earlier attackers failed. A trial breaches when any attacker
  gets through.
* ``simulate_stealth``: attacker 1 must survive n observation stages, each
  ended early by a Poisson detection at rate lambda within the stage window
  tau_a; the attacker chain is the same as above.
* ``simulate_whackamole``: a continuous-time race where defenses break at
  rate N/(tau_F+tau_B), capped at the installed count, and each broken one
  repairs at rate 1/(tau_D+tau_R). Records broken counts at sample times
  and whether all installed defenses were ever down at once.

Reproducibility contract: estimates are a pure function of (scenario,
trials, seed). Draws are counter-indexed per trial (see ``rng``), chunk
results are integer sums, so worker count and scheduling cannot change any
reported digit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..blockade import BlockadePosture, _single_attacker_success
from ..core import ThreatModel, _require_nonnegative, _require_positive
from ..delay import DelayTimescales, DetectionModel
from ..errors import ChainInfeasible, DomainError
from .backend import ENV_VAR, load_backend

__all__ = [
    "SimulationConfig",
    "EstimateWithError",
    "WhackResult",
    "simulate_blockade",
    "simulate_stealth",
    "simulate_whackamole",
    "active_backend",
    "ENV_VAR",
]

_MASK64 = (1 << 64) - 1
_COND_SLACK = 1e-12


@dataclass(frozen=True, slots=True)
class SimulationConfig:
    """Trial count, seed, and an advisory worker count.

    Workers only split the trial range into chunks; estimates do not depend
    on the split.
    """

    trials: int = 100_000
    seed: int = 1
    workers: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.trials, int) or self.trials < 1:
            raise DomainError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.seed, int):
            raise DomainError(f"seed must be an integer, got {self.seed!r}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise DomainError(f"workers must be an integer >= 1, got {self.workers!r}")


@dataclass(frozen=True, slots=True)
class EstimateWithError:
    """Sample mean, its standard error (sample sd / sqrt(trials)), and trials."""

    mean: float
    std_error: float
    trials: int


@dataclass(frozen=True, slots=True)
class WhackResult:
    """Sampled mean broken-defense curve plus the all-down probability.

    ``trajectory`` holds (time, EstimateWithError) pairs. ``breach_prob``
    is simulation-only: the analytic model has no closed form for it.
    """

    trajectory: tuple
    breach_prob: EstimateWithError


def active_backend() -> str:
    """Name of the kernel backend the next simulation call will use."""
    return load_backend()[1]


def _chunk_ranges(trials: int, workers: int):
    base, rem = divmod(trials, workers)
    edges = [0]
    for w in range(workers):
        edges.append(edges[-1] + base + (1 if w < rem else 0))
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a]


def _run_chunks(fn, trials: int, workers: int):
    ranges = _chunk_ranges(trials, workers)
    if len(ranges) == 1:
        return [fn(*ranges[0])]
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def _bernoulli_estimate(successes: int, trials: int) -> EstimateWithError:
    mean = successes / trials
    se = math.sqrt(mean * (1.0 - mean) / (trials - 1.0)) if trials > 1 else 0.0
    return EstimateWithError(mean, se, trials)


def _mean_estimate(total: int, total_sq: int, trials: int) -> EstimateWithError:
    mean = total / trials
    if trials > 1:
        var = max(0.0, (total_sq / trials - mean * mean) * (trials / (trials - 1.0)))
        se = math.sqrt(var / trials)
    else:
        se = 0.0
    return EstimateWithError(mean, se, trials)


def _integral_count(value: float, name: str) -> int:
    value = _require_nonnegative(value, name)
    if not float(value).is_integer():
        raise DomainError(f"{name} must be a whole number to simulate, got {value!r}")
    return int(value)


def _attacker_chain_prob(q: float, threat: ThreatModel) -> float:
    fail_rest = threat.attacker_dependence * q
    if fail_rest > 1.0 + _COND_SLACK:
        raise ChainInfeasible(
            f"conditional attacker failure g*q = {fail_rest!r} exceeds 1 "
            f"(g={threat.attacker_dependence!r}, q={q!r})"
        )
    return min(fail_rest, 1.0)


def simulate_blockade(
    posture: BlockadePosture,
    threat: ThreatModel,
    config: SimulationConfig = SimulationConfig(),
) -> EstimateWithError:
    """Estimate the blockade breach likelihood by running the chain."""
    n = _integral_count(posture.defense_count, "defense_count")
    p = posture.failure_prob
    f = posture.defense_dependence
    thr_rest = min(f * p, 1.0)  # construction already bounds f*p
    q = 1.0 - _single_attacker_success(posture.defense_count, p, f)
    fail_rest = _attacker_chain_prob(q, threat)

    kernels, _ = load_backend()
    seed = np.uint64(config.seed & _MASK64)
    counts = _run_chunks(
        lambda a, b: kernels.chain_breach_count(
            seed, a, b, n, p, thr_rest, threat.attacker_count, fail_rest
        ),
        config.trials,
        config.workers,
    )
    return _bernoulli_estimate(int(sum(counts)), config.trials)


def simulate_stealth(
    detection: DetectionModel,
    defense_count: float,
    threat: ThreatModel,
    config: SimulationConfig = SimulationConfig(),
) -> EstimateWithError:
    """Estimate the stealth breach likelihood stage by stage."""
    n = _integral_count(defense_count, "defense_count")
    survive = math.exp(-detection.capability)  # P(Exp(lambda) >= tau_a)
    q = -math.expm1(-detection.capability * n)
    fail_rest = _attacker_chain_prob(q, threat)

    kernels, _ = load_backend()
    seed = np.uint64(config.seed & _MASK64)
    counts = _run_chunks(
        lambda a, b: kernels.chain_breach_count(
            seed, a, b, n, survive, survive, threat.attacker_count, fail_rest
        ),
        config.trials,
        config.workers,
    )
    return _bernoulli_estimate(int(sum(counts)), config.trials)


def simulate_whackamole(
    timescales: DelayTimescales,
    n_installed: int,
    attackers: int,
    horizon: float,
    sample_times,
    config: SimulationConfig = SimulationConfig(),
) -> WhackResult:
    """Run the break/repair race and sample the broken-defense count."""
    if not isinstance(n_installed, int) or n_installed < 1:
        raise DomainError(f"n_installed must be an integer >= 1, got {n_installed!r}")
    if not isinstance(attackers, int) or attackers < 1:
        raise DomainError(f"attackers must be an integer >= 1, got {attackers!r}")
    horizon = _require_positive(horizon, "horizon")

    times = np.asarray(sample_times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("sample_times must be a nonempty 1-D sequence")
    if not np.all(np.isfinite(times)):
        raise DomainError("sample_times must be finite")
    if np.any(np.diff(times) <= 0.0):
        raise DomainError("sample_times must strictly increase")
    if times[0] < 0.0 or times[-1] > horizon:
        raise DomainError(
            f"sample_times must lie within [0, horizon={horizon!r}]"
        )

    break_rate = attackers / timescales.attack_period
    repair_rate = 1.0 / timescales.defend_period

    kernels, _ = load_backend()
    seed = np.uint64(config.seed & _MASK64)
    parts = _run_chunks(
        lambda a, b: kernels.whack_stats(
            seed, a, b, break_rate, repair_rate, n_installed, horizon, times
        ),
        config.trials,
        config.workers,
    )

    m = times.size
    sums = [0] * m
    sumsq = [0] * m
    breaches = 0
    for part_sums, part_sumsq, part_breaches in parts:
        for k in range(m):
            sums[k] += int(part_sums[k])
            sumsq[k] += int(part_sumsq[k])
        breaches += int(part_breaches)

    trajectory = tuple(
        (float(times[k]), _mean_estimate(sums[k], sumsq[k], config.trials))
        for k in range(m)
    )
    return WhackResult(trajectory, _bernoulli_estimate(breaches, config.trials))
