"""Jitted simulation kernels: scalar loops with early exits.

Same draw-slot layout as kernels_numpy; the chain kernel is bit-compatible
with it. nogil lets the dispatcher run worker chunks on real threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import rng

__all__ = ["chain_breach_count", "whack_stats"]

_mix64 = njit(cache=True, nogil=True, inline="always")(rng.mix64)
_uniform01 = njit(cache=True, nogil=True, inline="always")(rng.uniform01)

_GOLDEN = rng.GOLDEN
_ONE = rng.ONE


@njit(cache=True, nogil=True)
def chain_breach_count(
    seed,
    start,
    stop,
    n_stages,
    thr_first,
    thr_rest,
    attackers,
    fail_rest,
):
    seed = np.uint64(seed)
    count = 0
    for trial in range(start, stop):
        key = _mix64(seed + (np.uint64(trial) + _ONE) * _GOLDEN)

        success = True
        for j in range(n_stages):
            u = _uniform01(_mix64(key + np.uint64(j + 1) * _GOLDEN))
            thr = thr_first if j == 0 else thr_rest
            if u >= thr:
                success = False
                break
        if success:
            count += 1
            continue

        for a in range(1, attackers):
            u = _uniform01(_mix64(key + np.uint64(n_stages + a) * _GOLDEN))
            if u >= fail_rest:
                count += 1
                break
    return count


@njit(cache=True, nogil=True)
def whack_stats(
    seed,
    start,
    stop,
    break_rate,
    repair_rate,
    n_installed,
    horizon,
    sample_times,
):
    seed = np.uint64(seed)
    m = sample_times.shape[0]
    sums = np.zeros(m, dtype=np.int64)
    sumsq = np.zeros(m, dtype=np.int64)
    breaches = 0

    for run in range(start, stop):
        key = _mix64(seed + (np.uint64(run) + _ONE) * _GOLDEN)
        t = 0.0
        n = 0
        ptr = 0
        draw = 0
        breached = False

        while True:
            rate_break = break_rate if n < n_installed else 0.0
            rate_total = rate_break + n * repair_rate
            u1 = _uniform01(_mix64(key + np.uint64(draw + 1) * _GOLDEN))
            u2 = _uniform01(_mix64(key + np.uint64(draw + 2) * _GOLDEN))
            draw += 2
            t_next = t + (-np.log(u1) / rate_total)

            while ptr < m and sample_times[ptr] < t_next:
                sums[ptr] += n
                sumsq[ptr] += n * n
                ptr += 1

            if t_next > horizon:
                break
            if u2 < rate_break / rate_total:
                n += 1
                if n == n_installed:
                    breached = True
            else:
                n -= 1
            t = t_next

        if breached:
            breaches += 1
    return sums, sumsq, breaches
