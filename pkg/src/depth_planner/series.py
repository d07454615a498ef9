"""Sampled-curve carriers shared by the analytic modules and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["CurveSeries", "Trajectory", "SurfaceSeries"]


@dataclass(frozen=True)
class CurveSeries:
    """A sampled (x, y) curve with strictly increasing, finite x."""

    x_label: str
    y_label: str
    points: tuple

    def __post_init__(self) -> None:
        pts = tuple((float(x), float(y)) for x, y in self.points)
        if not pts:
            raise DomainError("series must contain at least one point")
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise DomainError(f"series point ({x!r}, {y!r}) is not finite")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if not x1 > x0:
                raise DomainError(f"series x values must strictly increase ({x0!r} -> {x1!r})")
        object.__setattr__(self, "points", pts)

    @property
    def xs(self) -> tuple:
        return tuple(x for x, _ in self.points)

    @property
    def ys(self) -> tuple:
        return tuple(y for _, y in self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Trajectory:
    """Mean broken-defense count over time, sampled from t = 0.

    Times strictly increase starting at 0; values are nonnegative and
    nondecreasing (the mean repair-race curve is monotone).
    """

    points: tuple
    t_label: str = "t"
    y_label: str = "n_broken"

    def __post_init__(self) -> None:
        pts = tuple((float(t), float(y)) for t, y in self.points)
        if not pts:
            raise DomainError("trajectory must contain at least one point")
        if pts[0][0] != 0.0:
            raise DomainError(f"trajectory must start at t=0, got t={pts[0][0]!r}")
        for t, y in pts:
            if not (math.isfinite(t) and math.isfinite(y)):
                raise DomainError(f"trajectory point ({t!r}, {y!r}) is not finite")
            if y < 0.0:
                raise DomainError(f"trajectory value {y!r} is negative")
        for (t0, y0), (t1, y1) in zip(pts, pts[1:]):
            if not t1 > t0:
                raise DomainError(f"trajectory times must strictly increase ({t0!r} -> {t1!r})")
            if y1 < y0:
                raise DomainError(f"trajectory values must not decrease ({y0!r} -> {y1!r})")
        object.__setattr__(self, "points", pts)

    @property
    def ts(self) -> tuple:
        return tuple(t for t, _ in self.points)

    @property
    def ys(self) -> tuple:
        return tuple(y for _, y in self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class SurfaceSeries:
    """A sampled two-parameter surface: rows of (a, b, y), grid order row-major."""

    a_label: str
    b_label: str
    y_label: str
    points: tuple

    def __post_init__(self) -> None:
        pts = tuple((float(a), float(b), float(y)) for a, b, y in self.points)
        if not pts:
            raise DomainError("surface must contain at least one point")
        for row in pts:
            if not all(math.isfinite(v) for v in row):
                raise DomainError(f"surface point {row!r} is not finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)
