"""Pure-numpy simulation kernels: vectorized across trials.

Draw slots match kernels_numba exactly (see rng module), so the chain
kernel produces bit-identical counts on either backend. The repair-race
kernel consumes two slots per event in lockstep across runs; finished runs
are masked out, which leaves per-run draw sequences identical to the scalar
backend.
"""

from __future__ import annotations

import numpy as np

from .rng import GOLDEN, ONE, mix64, uniform01

__all__ = ["chain_breach_count", "whack_stats"]

_CHAIN_BLOCK = 1 << 19
_WHACK_BLOCK = 1 << 16


def chain_breach_count(
    seed,
    start: int,
    stop: int,
    n_stages: int,
    thr_first: float,
    thr_rest: float,
    attackers: int,
    fail_rest: float,
) -> int:
    """Count breaches among trials [start, stop).

    Attacker 1 walks the n-stage chain (slot j for stage j); attackers
    2..N each consume one conditional draw (slot n_stages + a - 1).
    """
    seed = np.uint64(seed)
    total = 0
    # uint64 draw-slot arithmetic wraps by design; silence overflow warnings.
    with np.errstate(over="ignore"):
        for b0 in range(start, stop, _CHAIN_BLOCK):
            b1 = min(b0 + _CHAIN_BLOCK, stop)
            trials = np.arange(b0, b1, dtype=np.uint64)
            keys = mix64(seed + (trials + ONE) * GOLDEN)

            success = np.ones(b1 - b0, dtype=bool)
            for j in range(n_stages):
                u = uniform01(mix64(keys + np.uint64(j + 1) * GOLDEN))
                success &= u < (thr_first if j == 0 else thr_rest)

            breach = success.copy()
            all_failed = ~success
            for a in range(1, attackers):
                u = uniform01(mix64(keys + np.uint64(n_stages + a) * GOLDEN))
                failed = u < fail_rest
                breach |= all_failed & ~failed
                all_failed &= failed

            total += int(np.count_nonzero(breach))
    return total


def whack_stats(
    seed,
    start: int,
    stop: int,
    break_rate: float,
    repair_rate: float,
    n_installed: int,
    horizon: float,
    sample_times: np.ndarray,
):
    """Continuous-time repair race over runs [start, stop).

    Returns (per-sample-time sums of broken counts, sums of squares,
    number of runs where every installed defense was broken at once).
    Event loop per run: exponential wait at total rate, then break versus
    repair chosen by one conditional draw. Slots 2k and 2k+1 drive event k.
    """
    seed = np.uint64(seed)
    m = sample_times.shape[0]
    sums = np.zeros(m, dtype=np.int64)
    sumsq = np.zeros(m, dtype=np.int64)
    breaches = 0

    with np.errstate(over="ignore"):
        for b0 in range(start, stop, _WHACK_BLOCK):
            b1 = min(b0 + _WHACK_BLOCK, stop)
            runs = b1 - b0
            keys = mix64(seed + (np.arange(b0, b1, dtype=np.uint64) + ONE) * GOLDEN)

            t = np.zeros(runs)
            n = np.zeros(runs, dtype=np.int64)
            ptr = np.zeros(runs, dtype=np.int64)
            breached = np.zeros(runs, dtype=bool)
            active = np.ones(runs, dtype=bool)
            draw = 0

            while active.any():
                u1 = uniform01(mix64(keys + np.uint64(draw + 1) * GOLDEN))
                u2 = uniform01(mix64(keys + np.uint64(draw + 2) * GOLDEN))
                draw += 2

                rate_break = np.where(n < n_installed, break_rate, 0.0)
                rate_total = rate_break + n * repair_rate
                t_next = t + (-np.log(u1) / rate_total)

                # Record every sample time the pending event jumps across.
                while True:
                    idx = np.nonzero(active & (ptr < m))[0]
                    if idx.size == 0:
                        break
                    idx = idx[sample_times[ptr[idx]] < t_next[idx]]
                    if idx.size == 0:
                        break
                    np.add.at(sums, ptr[idx], n[idx])
                    np.add.at(sumsq, ptr[idx], n[idx] * n[idx])
                    ptr[idx] += 1

                active &= ~(t_next > horizon)
                go_break = active & (u2 < rate_break / rate_total)
                go_repair = active & ~go_break
                n[go_break] += 1
                breached |= go_break & (n == n_installed)
                n[go_repair] -= 1
                t = np.where(active, t_next, t)

            breaches += int(np.count_nonzero(breached))
    return sums, sumsq, breaches
