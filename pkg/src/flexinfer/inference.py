"""Near-true inference with flexible rules.

* :func:`natural_inference` - plain modus ponens on a near-true premise.
* :func:`degree_inference` - degree-level modus ponens; the conclusion's
  truth-degree is converted to a number on the side fixed by the fact's
  orientation relative to the antecedent peak.
* :func:`at_method` - direct evaluation through the rule's adjoint maps.
* :func:`parallel_degree_inference` - degree-weighted blend over a rulebase.
* :func:`interpolation_eval` - piecewise-linear interpolation through the
  peak pairs of a rulebase.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NoFiredRule, NotNearTrue, OutOfRange, OutsideExtendedCore, UniverseMismatch
from .rules import FlexibleRule, Polarity, adjoint_function, antecedent_degree
from .truth import TruthDegree
from .values import TOL, FlexibleValue, Side


class Method(enum.Enum):
    NATURAL = "natural"
    DEGREE_UMP = "degree"
    AT = "at"
    PARALLEL = "parallel"
    INTERPOLATION = "interpolation"


@dataclass(frozen=True)
class InferenceResult:
    conclusion_value: FlexibleValue
    truth: TruthDegree
    numeric: float | None
    side: Side
    method: Method

    @property
    def in_extended_core(self) -> bool:
        if self.numeric is None:
            return False
        return self.conclusion_value.consistency(self.numeric) >= 0.5 - TOL


def natural_inference(rule: FlexibleRule, x) -> tuple[FlexibleValue, TruthDegree] | None:
    """Return ``(consequent, degree)`` when the premise is near-true, else None."""
    t = antecedent_degree(rule, x)
    if t.value > 0.5:
        return rule.consequent, t
    return None


def ln_conversion(value: FlexibleValue, t: TruthDegree | float, side: Side) -> float:
    """Linguistic-to-numeric conversion of a near-true degree.

    The level is capped at ``value.beta``; on a plateau the point nearest
    the chosen side's support boundary is returned.
    """
    tv = t.value if isinstance(t, TruthDegree) else float(t)
    if not tv > 0.5:
        raise NotNearTrue(f"truth-degree {tv} is not near-true (> 0.5)")
    return value.invert(min(tv, value.beta), side)


def orientation(rule: FlexibleRule, x0: float) -> Side:
    """Side of the consequent addressed by a fact at ``x0``."""
    peak = rule.antecedent.peak
    if x0 < peak:
        side = Side.LEFT
    elif x0 > peak:
        side = Side.RIGHT
    else:
        side = Side.AT_PEAK
    if rule.polarity is Polarity.DECREASING:
        side = side.flipped()
    return side


def degree_inference(rule: FlexibleRule, x0: float) -> InferenceResult:
    a = rule.antecedent
    t = TruthDegree(a.consistency(x0), a.beta)
    if not t.near_true:
        raise NotNearTrue(f"rule {rule.name!r}: premise degree {t.value} at x0={x0} is not near-true")
    side = orientation(rule, x0)
    y = ln_conversion(rule.consequent, t, side)
    return InferenceResult(rule.consequent, _rescale(t, rule.consequent), y, side, Method.DEGREE_UMP)


def _rescale(t: TruthDegree, value: FlexibleValue) -> TruthDegree:
    # identity transfer; capped when the consequent's ceiling is lower
    return TruthDegree(min(t.value, value.beta), value.beta)


def _adjoint_eval(rule: FlexibleRule, x0: float) -> float:
    left, right = adjoint_function(rule)
    return left(x0) if x0 <= rule.antecedent.peak else right(x0)


def at_method(rule: FlexibleRule, x0: float) -> InferenceResult:
    a = rule.antecedent
    if not a.in_extended_core(x0):
        raise OutsideExtendedCore(
            f"rule {rule.name!r}: x0={x0} outside extended core {a.extended_core}"
        )
    y = _adjoint_eval(rule, x0)
    t = TruthDegree(a.consistency(x0), a.beta)
    return InferenceResult(rule.consequent, _rescale(t, rule.consequent), y, orientation(rule, x0), Method.AT)


def parallel_degree_inference(rules: Sequence[FlexibleRule], x0: float) -> InferenceResult:
    """Fire every rule with positive degree and blend adjoint outputs by degree.

    Per-rule outputs are clamped to the consequent's support. The reported
    conclusion is the consequent of the strongest rule (lower index on ties).
    """
    if not rules:
        raise NoFiredRule("empty rulebase")
    u = rules[0].consequent.universe
    if any(r.consequent.universe != u for r in rules):
        raise UniverseMismatch("all rules in a parallel base must share a consequent universe")
    weights, outputs = [], []
    best, best_t = None, 0.0
    for rule in rules:
        t = rule.antecedent.consistency(x0)
        if t <= 0.0:
            continue
        b = rule.consequent
        y = min(max(_adjoint_eval(rule, x0), b.support[0]), b.support[1])
        weights.append(t)
        outputs.append(y)
        if t > best_t:
            best, best_t = rule, t
    if best is None:
        raise NoFiredRule(f"no rule fires at x0={x0}")
    w = np.asarray(weights)
    y = float(np.dot(w, outputs) / w.sum()) if len(w) > 1 else outputs[0]
    truth = TruthDegree(min(best_t, best.consequent.beta), best.consequent.beta)
    return InferenceResult(best.consequent, truth, y, orientation(best, x0), Method.PARALLEL)


def interpolation_eval(rules: Sequence[FlexibleRule], x0: float) -> float:
    """Piecewise-linear interpolation through ``(antecedent peak, consequent peak)``."""
    xs = np.array([r.antecedent.peak for r in rules])
    ys = np.array([r.consequent.peak for r in rules])
    order = np.argsort(xs, kind="stable")
    xs, ys = xs[order], ys[order]
    if not xs[0] <= x0 <= xs[-1]:
        raise OutOfRange(f"x0={x0} outside peak range [{xs[0]}, {xs[-1]}]")
    j = int(np.searchsorted(xs, x0))
    if xs[j] == x0:
        return float(ys[j])
    return float(np.interp(x0, xs, ys))
