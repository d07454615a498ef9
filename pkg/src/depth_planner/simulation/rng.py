"""Counter-based random numbers for reproducible, order-independent trials.

Every uniform draw is a pure function of (seed, trial index, draw slot):

    key  = mix64(seed + (trial + 1) * GOLDEN)
    bits = mix64(key + (slot + 1) * GOLDEN)
    u    = ((bits >> 11) + 0.5) * 2**-53        in (0, 1)

``mix64`` is the splitmix64 finalizer, a bijective 64-bit scrambler with
good avalanche behavior. Because draws are indexed rather than streamed,
trial partitioning across workers, early exits inside a trial, and
vectorized versus scalar evaluation all see identical values, which is what
makes results independent of worker count and (for comparison-only kernels)
bit-identical across backends.

The functions below are written against numpy uint64 semantics so the same
source works elementwise on arrays and, once jitted, on scalars.
"""

from __future__ import annotations

import numpy as np

__all__ = ["GOLDEN", "ONE", "mix64", "uniform01"]

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
ONE = np.uint64(1)

_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TWO_NEG53 = 2.0**-53


def mix64(z):
    """splitmix64 finalizer; wraps modulo 2**64."""
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def uniform01(bits):
    """Map 64 random bits to a double in the open interval (0, 1)."""
    return ((bits >> _S11) + 0.5) * _TWO_NEG53
