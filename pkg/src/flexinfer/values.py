"""Flexible linguistic values, their consistency functions, and partitions.

A flexible value is described by a knot schedule on a bounded numeric
universe::

    (s-, 0) - (e-, 0.5) - (c-, 1) - (peak, beta) - (c+, 1) - (e+, 0.5) - (s+, 0)

with support ``(s-, s+)``, extended core ``[e-, e+]`` and core ``[c-, c+]``.
The consistency function is the piecewise-linear interpolant of those knots
and is zero outside the support; membership is consistency clamped to
``[0, 1]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BadBeta, BadCount, OrderingViolation, OutOfUniverse, ValidationError

TOL = 1e-9

Interval = tuple[float, float]


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    AT_PEAK = "at_peak"

    def flipped(self) -> "Side":
        if self is Side.LEFT:
            return Side.RIGHT
        if self is Side.RIGHT:
            return Side.LEFT
        return self


@dataclass(frozen=True)
class Universe:
    name: str
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError(f"universe {self.name!r}: bounds must be finite")
        if not self.lo < self.hi:
            raise ValidationError(f"universe {self.name!r}: need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def clip(self, interval: Interval) -> Interval:
        return (max(interval[0], self.lo), min(interval[1], self.hi))


@dataclass(frozen=True)
class FlexibleValue:
    """A flexible linguistic value on a universe.

    ``overhang`` marks values whose outer knots sit beyond the universe
    bounds (shoulder members of a generated partition); only the in-universe
    part of such a value is meaningful.
    """

    name: str
    universe: Universe
    support: Interval
    core: Interval
    extended_core: Interval
    peak: float
    beta: float = 1.0
    overhang: bool = False
    _xs: np.ndarray = field(init=False, repr=False, compare=False)
    _ys: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_geometry(self)
        s_lo, s_hi = self.support
        e_lo, e_hi = self.extended_core
        c_lo, c_hi = self.core
        xs = np.array([s_lo, e_lo, c_lo, self.peak, c_hi, e_hi, s_hi], dtype=float)
        ys = np.array([0.0, 0.5, 1.0, self.beta, 1.0, 0.5, 0.0])
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "_xs", xs)
        object.__setattr__(self, "_ys", ys)

    @property
    def knots(self) -> list[tuple[float, float]]:
        return list(zip(self._xs.tolist(), self._ys.tolist()))

    def consistency(self, x):
        """Consistency degree in ``[0, beta]``; accepts scalars or arrays."""
        out = np.interp(x, self._xs, self._ys, left=0.0, right=0.0)
        if np.ndim(out) == 0:
            return float(out)
        return out

    def membership(self, x):
        out = np.clip(np.interp(x, self._xs, self._ys, left=0.0, right=0.0), 0.0, 1.0)
        if np.ndim(out) == 0:
            return float(out)
        return out

    def in_core(self, x: float) -> bool:
        return self.core[0] <= x <= self.core[1]

    def in_extended_core(self, x: float, tol: float = 0.0) -> bool:
        return self.extended_core[0] - tol <= x <= self.extended_core[1] + tol

    def in_support_closure(self, x: float) -> bool:
        return self.support[0] <= x <= self.support[1]

    def invert(self, level: float, side: Side) -> float:
        """Point on ``side`` of the peak where consistency first reaches ``level``.

        Walking inward from the support boundary, the first crossing is
        returned, so on a plateau the outermost point wins.
        """
        if side is Side.AT_PEAK:
            return self.peak
        if not 0.0 < level <= self.beta:
            raise ValueError(f"level {level} outside (0, {self.beta}]")
        if side is Side.LEFT:
            xs, ys = self._xs[:4], self._ys[:4]
        else:
            xs, ys = self._xs[3:][::-1], self._ys[3:][::-1]
        for i in range(1, 4):
            if ys[i] >= level:
                x0, y0, x1, y1 = xs[i - 1], ys[i - 1], xs[i], ys[i]
                if y1 == level:
                    return float(x1)
                return float(x0 + (level - y0) * (x1 - x0) / (y1 - y0))
        return self.peak  # unreachable for level <= beta


def _check_geometry(v: FlexibleValue) -> None:
    if not math.isfinite(v.beta) or v.beta < 1.0:
        raise BadBeta(f"value {v.name!r}: beta must be >= 1, got {v.beta}")
    s_lo, s_hi = v.support
    e_lo, e_hi = v.extended_core
    c_lo, c_hi = v.core
    knots = [s_lo, e_lo, c_lo, v.peak, c_hi, e_hi, s_hi]
    if not all(math.isfinite(k) for k in knots):
        raise OrderingViolation(f"value {v.name!r}: knots must be finite")
    if not (s_lo < e_lo < c_lo <= v.peak <= c_hi < e_hi < s_hi):
        raise OrderingViolation(
            f"value {v.name!r}: need s- < e- < c- <= peak <= c+ < e+ < s+, got "
            f"support={v.support}, extended_core={v.extended_core}, core={v.core}, peak={v.peak}"
        )
    if v.beta > 1.0 and not (c_lo < v.peak < c_hi):
        raise OrderingViolation(
            f"value {v.name!r}: beta > 1 needs the peak strictly inside the core"
        )
    u = v.universe
    if v.overhang:
        if not u.contains(v.peak):
            raise OutOfUniverse(f"value {v.name!r}: peak {v.peak} outside universe {u.name!r}")
        return
    if not (u.lo <= s_lo and s_hi <= u.hi):
        raise OutOfUniverse(
            f"value {v.name!r}: support {v.support} outside universe {u.name!r} [{u.lo}, {u.hi}]"
        )


def make_flexible_value(
    name: str,
    universe: Universe,
    support: Sequence[float],
    core: Sequence[float],
    peak: float,
    beta: float = 1.0,
    extended_core: Sequence[float] | None = None,
    *,
    overhang: bool = False,
) -> FlexibleValue:
    """Build a validated flexible value.

    When ``extended_core`` is omitted its endpoints are the midpoints between
    the support and core endpoints.
    """
    s_lo, s_hi = (float(a) for a in support)
    c_lo, c_hi = (float(a) for a in core)
    if extended_core is None:
        e = ((s_lo + c_lo) / 2.0, (c_hi + s_hi) / 2.0)
    else:
        e_lo, e_hi = extended_core
        e = (float(e_lo), float(e_hi))
    return FlexibleValue(
        name=name,
        universe=universe,
        support=(s_lo, s_hi),
        core=(c_lo, c_hi),
        extended_core=e,
        peak=float(peak),
        beta=float(beta),
        overhang=overhang,
    )


def consistency(value: FlexibleValue, x):
    return value.consistency(x)


def membership(value: FlexibleValue, x):
    return value.membership(x)


@dataclass(frozen=True)
class FlexiblePartition:
    universe: Universe
    values: tuple[FlexibleValue, ...]

    def __post_init__(self):
        if not self.values:
            raise BadCount("partition needs at least one value")
        for v in self.values:
            if v.universe != self.universe:
                raise ValidationError(f"value {v.name!r} is not on universe {self.universe.name!r}")
        peaks = [v.peak for v in self.values]
        if any(b <= a for a, b in zip(peaks, peaks[1:])):
            raise OrderingViolation("partition peaks must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> FlexibleValue:
        return self.values[i]

    @property
    def peaks(self) -> np.ndarray:
        return np.array([v.peak for v in self.values])

    def membership_sum(self, x):
        return sum(v.membership(x) for v in self.values)

    def classify(self, x: float) -> tuple[FlexibleValue, float]:
        return classify(self, x)


def make_triangular_partition(universe: Universe, n: int, prefix: str | None = None) -> FlexiblePartition:
    """Evenly spaced complementary triangles; the end members are half-triangles.

    Member ``i`` (1-based) is named ``f"{prefix}{i}"``; the prefix defaults to
    ``universe.name + "_"``.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise BadCount(f"partition needs n >= 2 values, got {n!r}")
    n = int(n)
    if prefix is None:
        prefix = f"{universe.name}_"
    peaks = np.linspace(universe.lo, universe.hi, n)
    h = peaks[1] - peaks[0]
    values = []
    for i, p in enumerate(peaks.tolist()):
        left = peaks[i - 1] if i > 0 else p - h
        right = peaks[i + 1] if i < n - 1 else p + h
        values.append(
            make_flexible_value(
                f"{prefix}{i + 1}",
                universe,
                support=(float(left), float(right)),
                core=(p, p),
                peak=p,
                overhang=(i == 0 or i == n - 1),
            )
        )
    return FlexiblePartition(universe, tuple(values))


def classify(partition: FlexiblePartition, x: float) -> tuple[FlexibleValue, float]:
    """Numeric-to-linguistic: the member with maximal consistency at ``x``.

    Ties go to the lower index.
    """
    if not partition.universe.contains(x):
        raise OutOfUniverse(f"x={x} outside universe {partition.universe.name!r}")
    best, best_deg = partition.values[0], partition.values[0].consistency(x)
    for v in partition.values[1:]:
        d = v.consistency(x)
        if d > best_deg:
            best, best_deg = v, d
    return best, best_deg
