"""Classical fuzzy reasoning on discretized universes.

Zadeh's implication relation, sup-min composition (CRI), and the Mamdani
clip / max-aggregate / centroid pipeline with singleton fuzzification.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BadCount, EmptySet, GridMismatch, NoFiredRule, OutOfUniverse, UniverseMismatch
from .rules import FlexibleRule
from .values import TOL, FlexibleValue, Universe

DEFAULT_GRID_POINTS = 201


@dataclass(frozen=True)
class Grid:
    universe: Universe
    n: int = DEFAULT_GRID_POINTS
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise BadCount(f"grid needs n >= 2 points, got {self.n}")
        pts = np.linspace(self.universe.lo, self.universe.hi, self.n)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def spacing(self) -> float:
        return self.universe.width / (self.n - 1)


@dataclass(frozen=True)
class FuzzySetGrid:
    grid: Grid
    degrees: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.degrees, dtype=float)
        if d.shape != (self.grid.n,):
            raise GridMismatch(f"expected {self.grid.n} degrees, got shape {d.shape}")
        if np.any(d < 0.0) or np.any(d > 1.0):
            raise ValueError("fuzzy degrees must lie in [0, 1]")
        object.__setattr__(self, "degrees", d)


@dataclass(frozen=True)
class FuzzyRelationGrid:
    x_grid: Grid
    y_grid: Grid
    degrees: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.degrees, dtype=float)
        if d.shape != (self.x_grid.n, self.y_grid.n):
            raise GridMismatch(f"relation shape {d.shape} does not match grids")
        object.__setattr__(self, "degrees", d)


def discretize(value: FlexibleValue, grid: Grid) -> FuzzySetGrid:
    if value.universe != grid.universe:
        raise UniverseMismatch(
            f"value {value.name!r} lives on {value.universe.name!r}, grid on {grid.universe.name!r}"
        )
    return FuzzySetGrid(grid, value.membership(grid.points))


def zadeh_implication(a: FuzzySetGrid, b: FuzzySetGrid) -> FuzzyRelationGrid:
    """``R[i, j] = max(1 - a[i], min(a[i], b[j]))``"""
    ai = a.degrees[:, None]
    bj = b.degrees[None, :]
    return FuzzyRelationGrid(a.grid, b.grid, np.maximum(1.0 - ai, np.minimum(ai, bj)))


def cri_compose(a_prime: FuzzySetGrid, r: FuzzyRelationGrid) -> FuzzySetGrid:
    """Sup-min composition ``B'[j] = max_i min(A'[i], R[i, j])``."""
    if a_prime.grid != r.x_grid:
        raise GridMismatch("fact grid differs from the relation's x grid")
    out = np.minimum(a_prime.degrees[:, None], r.degrees).max(axis=0)
    return FuzzySetGrid(r.y_grid, out)


def _nearest_index(x0: float, grid: Grid) -> int:
    u = grid.universe
    if not u.lo <= x0 <= u.hi:
        raise OutOfUniverse(f"x0={x0} outside universe {u.name!r}")
    pts = grid.points
    j = int(np.searchsorted(pts, x0))
    if j == 0:
        return 0
    if j >= grid.n:
        return grid.n - 1
    lower, upper = x0 - pts[j - 1], pts[j] - x0
    # ties within TOL resolve to the lower index
    return j - 1 if lower <= upper + TOL else j


def fuzzify_singleton(x0: float, grid: Grid) -> FuzzySetGrid:
    d = np.zeros(grid.n)
    d[_nearest_index(x0, grid)] = 1.0
    return FuzzySetGrid(grid, d)


def defuzzify_centroid(s: FuzzySetGrid) -> float:
    total = float(np.sum(s.degrees))
    if total <= 0.0:
        raise EmptySet("cannot defuzzify an all-zero fuzzy set")
    pts = s.grid.points
    # pairing mirrored cells keeps symmetric sets centred to rounding error
    num = float(np.sum((pts - pts[::-1]) / 2.0 * s.degrees))
    mid = (pts[0] + pts[-1]) / 2.0
    return float(mid + num / total)


def _shared_consequent_universe(rules: Sequence[FlexibleRule]) -> Universe:
    if not rules:
        raise NoFiredRule("empty rulebase")
    u = rules[0].consequent.universe
    for r in rules[1:]:
        if r.consequent.universe != u:
            raise UniverseMismatch("all rules must share a consequent universe")
    return u


def mamdani_output(rules: Sequence[FlexibleRule], x0: float, y_grid: Grid) -> FuzzySetGrid:
    """Aggregated (pointwise max) clipped consequents before defuzzification."""
    u = _shared_consequent_universe(rules)
    if y_grid.universe != u:
        raise UniverseMismatch("output grid is not on the consequent universe")
    agg = np.zeros(y_grid.n)
    fired = False
    for rule in rules:
        level = rule.antecedent.membership(x0)
        if level <= 0.0:
            continue
        fired = True
        clipped = np.minimum(discretize(rule.consequent, y_grid).degrees, level)
        np.maximum(agg, clipped, out=agg)
    if not fired:
        raise NoFiredRule(f"no rule fires at x0={x0}")
    return FuzzySetGrid(y_grid, agg)


def mamdani_pipeline(rules: Sequence[FlexibleRule], x0: float, y_grid: Grid) -> float:
    return defuzzify_centroid(mamdani_output(rules, x0, y_grid))


def cri_pipeline(rule: FlexibleRule, x0: float, x_grid: Grid, y_grid: Grid) -> float:
    """Singleton fact, Zadeh relation, sup-min composition, centroid."""
    a = discretize(rule.antecedent, x_grid)
    b = discretize(rule.consequent, y_grid)
    out = cri_compose(fuzzify_singleton(x0, x_grid), zadeh_implication(a, b))
    return defuzzify_centroid(out)
