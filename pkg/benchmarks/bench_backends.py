"""Compare the numba and numpy simulation kernels on identical workloads.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--trials 2000000] [--runs 5]

Both backends draw from the same counter-based streams, so the chain kernel
must produce identical breach counts; the whack-a-mole kernel may differ in
the last few ulps of its accumulated moments. The script verifies agreement
while it times them.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from depth_planner.simulation import backend


def _best_of(runs: int, fn, *args) -> tuple[float, object]:
    fn(*args)  # warmup: first numba call may compile, first numpy call warms caches
    best = float("inf")
    result = None
    for _ in range(runs):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=2_000_000)
    parser.add_argument("--whack-trials", type=int, default=100_000)
    parser.add_argument("--runs", type=int, default=5)
    args = parser.parse_args()

    kernels = {}
    for name in ("numpy", "numba"):
        try:
            kernels[name], _ = backend.load_backend(name)
        except Exception as exc:  # numba may be absent; still bench numpy
            print(f"{name}: unavailable ({exc})")
    if not kernels:
        raise SystemExit("no simulation backend available")

    seed = np.uint64(12345)

    # p=0.5, n=3, f=1.5: all-fail chain 0.5*0.75*0.75 = 0.28125, so a single
    # attacker fails with q = 0.71875; attackers 2..N fail at g*q, g = 1.02.
    print(f"chain kernel: p=0.5 n=3 f=1.5 N=10 g=1.02, {args.trials:,} trials")
    counts = {}
    for name, mod in kernels.items():
        elapsed, count = _best_of(
            args.runs,
            mod.chain_breach_count,
            seed, 0, args.trials, 3, 0.5, 0.75, 10, 0.73312500000000003,
        )
        counts[name] = count
        rate = args.trials / elapsed / 1e6
        print(f"  {name:>6}: {elapsed * 1e3:8.2f} ms  ({rate:6.1f} M trials/s)  breaches={count}")
    if len(counts) == 2 and counts["numpy"] != counts["numba"]:
        raise SystemExit("backend mismatch: chain counts differ")

    sample_times = np.linspace(0.0, 30.0, 16)
    print(f"whack kernel: ratio 10, n_installed=11, horizon 30, {args.whack_trials:,} runs")
    moments = {}
    for name, mod in kernels.items():
        elapsed, stats = _best_of(
            args.runs,
            mod.whack_stats,
            seed, 0, args.whack_trials, 1.0, 0.1, 11, 30.0, sample_times,
        )
        moments[name] = stats
        rate = args.whack_trials / elapsed / 1e3
        print(f"  {name:>6}: {elapsed * 1e3:8.2f} ms  ({rate:6.1f} k runs/s)  breaches={stats[2]}")
    if len(moments) == 2:
        b_np, b_nb = moments["numpy"][2], moments["numba"][2]
        if b_np != b_nb:
            raise SystemExit("backend mismatch: whack breach counts differ")
        sums_np, sums_nb = moments["numpy"][0], moments["numba"][0]
        rel = np.max(np.abs(sums_np - sums_nb) / np.maximum(np.abs(sums_np), 1.0))
        print(f"  max relative drift between backends' trajectory sums: {rel:.3e}")


if __name__ == "__main__":
    main()
