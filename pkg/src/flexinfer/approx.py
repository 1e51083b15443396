"""Rulebases summarizing a background function, and the comparison harness.

Builds granular rulebases from a target function, measures approximation
error as granules shrink, and computes the containment and problem-space
diagnostics used to compare flexible and fuzzy evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import fuzzy
from .errors import BadCount, EvaluatorFailure, FlexError, NonFiniteSample, OutOfUniverse, ValidationError
from .inference import at_method, degree_inference, interpolation_eval, parallel_degree_inference
from .rules import EnvelopeKind, FlexibleRule, Polarity, make_rule, rigid_envelope
from .values import TOL, FlexiblePartition, FlexibleValue, Universe, make_flexible_value, make_triangular_partition

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 10_000
WIDTH_FLOOR = 1e-9

EVALUATORS = ("interpolation", "parallel", "degree", "at", "mamdani")


@dataclass(frozen=True)
class Rulebase:
    rules: tuple[FlexibleRule, ...]
    partition: FlexiblePartition
    y_universe: Universe

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __getitem__(self, i):
        return self.rules[i]

    @property
    def x_universe(self) -> Universe:
        return self.partition.universe


@dataclass(frozen=True)
class ApproxStudyRow:
    n_granules: int
    h: float
    method: str
    sup_error: float
    mean_error: float


@dataclass(frozen=True)
class SpaceReport:
    area_support_product: float
    area_extcore_product: float
    area_implication_region: float


def _consequent(name: str, eta: float, d: float, u: Universe) -> FlexibleValue:
    lo, hi = eta - d, eta + d
    overhang = False
    # clamp to the universe unless that would squeeze a side to nothing
    if lo < u.lo:
        if u.lo < (u.lo + eta) / 2.0 < eta:
            lo = u.lo
        else:
            overhang = True
    if hi > u.hi:
        if eta < (eta + u.hi) / 2.0 < u.hi:
            hi = u.hi
        else:
            overhang = True
    return make_flexible_value(name, u, (lo, hi), (eta, eta), eta, overhang=overhang)


def build_rulebase_from_function(
    f: Callable[[float], float],
    x_universe: Universe,
    y_universe: Universe,
    n: int,
) -> Rulebase:
    """One rule per granule of an n-member triangular partition of ``x_universe``.

    Rule i maps the i-th antecedent to a triangular consequent peaked at
    ``f(peak_i)`` whose half-width is the larger jump to a neighbouring
    sample (floored at 1e-9). Polarity follows the local secant.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise BadCount(f"need n >= 2 granules, got {n!r}")
    partition = make_triangular_partition(x_universe, int(n), prefix="A")
    etas = []
    for a in partition:
        y = float(f(a.peak))
        if not math.isfinite(y):
            raise NonFiniteSample(f"f({a.peak}) = {y}")
        if not y_universe.contains(y):
            raise OutOfUniverse(f"f({a.peak}) = {y} outside universe {y_universe.name!r}")
        etas.append(y)

    rules = []
    for i, (a, eta) in enumerate(zip(partition, etas)):
        nbrs = [etas[j] for j in (i - 1, i + 1) if 0 <= j < len(etas)]
        d = max([abs(eta - e) for e in nbrs] + [WIDTH_FLOOR])
        lo_i, hi_i = max(i - 1, 0), min(i + 1, len(etas) - 1)
        secant = etas[hi_i] - etas[lo_i]
        polarity = Polarity.DECREASING if secant < 0 else Polarity.INCREASING
        b = _consequent(f"B{i + 1}", eta, d, y_universe)
        rules.append(make_rule(f"R{i + 1}", a, b, polarity=polarity))
    return Rulebase(tuple(rules), partition, y_universe)


def strongest_rule(rules: Sequence[FlexibleRule], x: float) -> FlexibleRule:
    """Rule with maximal antecedent consistency at x; lower index on ties."""
    best, best_t = rules[0], rules[0].antecedent.consistency(x)
    for r in rules[1:]:
        t = r.antecedent.consistency(x)
        if t > best_t:
            best, best_t = r, t
    return best


def make_evaluator(tag: str, rulebase: Sequence[FlexibleRule], grid_points: int = fuzzy.DEFAULT_GRID_POINTS):
    """Return ``x -> y`` for the named evaluation method."""
    rules = tuple(rulebase)
    if tag == "interpolation":
        return lambda x: interpolation_eval(rules, x)
    if tag == "parallel":
        return lambda x: parallel_degree_inference(rules, x).numeric
    if tag == "degree":
        return lambda x: degree_inference(strongest_rule(rules, x), x).numeric
    if tag == "at":
        return lambda x: at_method(strongest_rule(rules, x), x).numeric
    if tag == "mamdani":
        y_grid = fuzzy.Grid(rules[0].consequent.universe, grid_points)
        return lambda x: fuzzy.mamdani_pipeline(rules, x, y_grid)
    raise ValueError(f"unknown evaluator {tag!r}; choose from {', '.join(EVALUATORS)}")


def _evaluable_range(rulebase: Sequence[FlexibleRule]) -> tuple[float, float]:
    peaks = [r.antecedent.peak for r in rulebase]
    return min(peaks), max(peaks)


def sup_error(
    evaluator: str,
    rulebase: Sequence[FlexibleRule],
    f: Callable[[float], float],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    grid_points: int = fuzzy.DEFAULT_GRID_POINTS,
) -> tuple[float, float]:
    """``(max, mean)`` of ``|evaluator(x) - f(x)|`` over seeded uniform draws."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    ev = make_evaluator(evaluator, rulebase, grid_points)
    lo, hi = _evaluable_range(rulebase)
    xs = np.random.default_rng(seed).uniform(lo, hi, samples)
    errs = np.empty(samples)
    for k, x in enumerate(xs.tolist()):
        try:
            errs[k] = abs(ev(x) - f(x))
        except FlexError as exc:
            raise EvaluatorFailure(x, exc) from exc
    return float(errs.max()), float(errs.mean())


def refine_study(
    f: Callable[[float], float],
    x_universe: Universe,
    y_universe: Universe,
    granule_schedule: Sequence[int],
    evaluator: str = "interpolation",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    grid_points: int = fuzzy.DEFAULT_GRID_POINTS,
) -> list[ApproxStudyRow]:
    schedule = list(granule_schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValidationError(f"granule schedule must be non-empty and strictly increasing: {schedule}")
    rows = []
    for n in schedule:
        rb = build_rulebase_from_function(f, x_universe, y_universe, n)
        sup, mean = sup_error(evaluator, rb, f, samples, seed, grid_points)
        rows.append(ApproxStudyRow(n, x_universe.width / (n - 1), evaluator, sup, mean))
    return rows


def containment_failures(
    evaluator: str,
    rulebase: Sequence[FlexibleRule],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    grid_points: int = fuzzy.DEFAULT_GRID_POINTS,
) -> list[tuple[float, float | None]]:
    """Sampled inputs whose output misses the selected consequent's extended core.

    Inputs are drawn from the extended core of a uniformly chosen rule's
    antecedent (clipped to its universe). The selected consequent belongs to
    the strongest rule at that input. Failed evaluations are reported with
    ``None`` as the output.
    """
    rules = tuple(rulebase)
    ev = make_evaluator(evaluator, rules, grid_points)
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(rules), samples)
    draws = rng.random(samples)
    failures = []
    for k in range(samples):
        a = rules[int(picks[k])].antecedent
        lo, hi = a.universe.clip(a.extended_core)
        x = lo + float(draws[k]) * (hi - lo)
        b = strongest_rule(rules, x).consequent
        try:
            y = ev(x)
        except FlexError:
            failures.append((x, None))
            continue
        if b.consistency(y) < 0.5 - TOL:
            failures.append((x, y))
    return failures


def containment_rate(
    evaluator: str,
    rulebase: Sequence[FlexibleRule],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    grid_points: int = fuzzy.DEFAULT_GRID_POINTS,
) -> float:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    missed = containment_failures(evaluator, rulebase, samples, seed, grid_points)
    return 1.0 - len(missed) / samples


def space_report(rule: FlexibleRule) -> SpaceReport:
    """Areas of the regions a single-condition rule occupies under each reading."""
    sup = rigid_envelope(rule, EnvelopeKind.SUPPORT)
    ext = rigid_envelope(rule, EnvelopeKind.EXTENDED_CORE)
    u, v = rule.antecedent.universe, rule.consequent.universe
    supp_a = sup.x_interval[1] - sup.x_interval[0]
    supp_b = sup.y_interval[1] - sup.y_interval[0]
    outside_a = u.width - supp_a
    implication = outside_a * v.width + u.width * supp_b - outside_a * supp_b
    return SpaceReport(sup.area, ext.area, implication)


# name -> (function, x universe, y universe)
FUNCTIONS: dict[str, tuple[Callable[[float], float], Universe, Universe]] = {
    "identity": (lambda x: x, Universe("X", 0.0, 10.0), Universe("Y", 0.0, 10.0)),
    "square": (lambda x: x * x, Universe("X", 0.0, 2.0), Universe("Y", 0.0, 4.0)),
    "sin": (math.sin, Universe("X", 0.0, 2.0 * math.pi), Universe("Y", -1.0, 1.0)),
}
