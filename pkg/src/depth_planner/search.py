"""Bracketed 1-D minimization: coarse grid seed, then golden-section refinement.

Cost curves here are smooth but can have infeasible shoulders (evaluations
return +inf), so the grid pass locates the basin and the golden-section pass
only ever probes inside the bracket it was handed.
"""

from __future__ import annotations

import math

__all__ = ["golden_section", "grid_seeded_minimize"]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_section(fn, lo: float, hi: float, x_tol: float = 1e-11, max_iter: int = 200):
    """Minimize ``fn`` on [lo, hi]; returns (argmin, minimum)."""
    a, b = float(lo), float(hi)
    h = b - a
    if h <= x_tol:
        x = 0.5 * (a + b)
        return x, fn(x)

    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    yc = fn(c)
    yd = fn(d)
    for _ in range(max_iter):
        if h <= x_tol:
            break
        if yc < yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INVPHI2 * h
            yc = fn(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INVPHI * h
            yd = fn(d)
    if yc < yd:
        return c, yc
    return d, yd


def grid_seeded_minimize(fn, lo: float, hi: float, grid_steps: int, x_tol: float = 1e-11):
    """Scan ``grid_steps`` points on [lo, hi], then refine around the best one.

    ``fn`` may return +inf for infeasible inputs. Returns (argmin, minimum);
    the minimum is +inf when no grid point is feasible.
    """
    lo, hi = float(lo), float(hi)
    step = (hi - lo) / (grid_steps - 1)
    xs = [lo + i * step for i in range(grid_steps)]
    ys = [fn(x) for x in xs]

    best = min(range(grid_steps), key=lambda i: ys[i])
    if math.isinf(ys[best]):
        return xs[best], ys[best]

    bracket_lo = xs[best - 1] if best > 0 else xs[0]
    bracket_hi = xs[best + 1] if best < grid_steps - 1 else xs[-1]
    x, y = golden_section(fn, bracket_lo, bracket_hi, x_tol=x_tol)
    # The seed itself may beat the refined point when the basin edge is +inf.
    if ys[best] < y:
        return xs[best], ys[best]
    return x, y
