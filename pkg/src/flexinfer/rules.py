"""Flexible rules, rigid envelopes and adjoint affine maps."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ArityMismatch, MultiCondition, ValidationError
from .truth import TruthDegree
from .values import FlexibleValue, Interval


class Combiner(enum.Enum):
    CONJUNCTION = "conjunction"
    DISJUNCTION = "disjunction"
    SYNTHESIS = "synthesis"


class Polarity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class EnvelopeKind(enum.Enum):
    EXTENDED_CORE = "extended_core"
    SUPPORT = "support"


@dataclass(frozen=True)
class FlexibleRule:
    """``conditions -> consequent``; one polarity per condition."""

    name: str
    conditions: tuple[FlexibleValue, ...]
    consequent: FlexibleValue
    combiner: Combiner = Combiner.CONJUNCTION
    weights: tuple[float, ...] = ()
    polarities: tuple[Polarity, ...] = ()

    def __post_init__(self):
        if not self.conditions:
            raise ValidationError(f"rule {self.name!r}: needs at least one condition")
        object.__setattr__(self, "conditions", tuple(self.conditions))
        pols = tuple(self.polarities) or (Polarity.INCREASING,) * len(self.conditions)
        if len(pols) != len(self.conditions):
            raise ValidationError(f"rule {self.name!r}: one polarity per condition required")
        object.__setattr__(self, "polarities", pols)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if self.combiner is Combiner.SYNTHESIS:
            if len(weights) != len(self.conditions):
                raise ValidationError(f"rule {self.name!r}: synthesis needs one weight per condition")
            if any(w < 0 or not math.isfinite(w) for w in weights):
                raise ValidationError(f"rule {self.name!r}: weights must be finite and >= 0")
            if abs(math.fsum(weights) - 1.0) > 1e-12:
                raise ValidationError(f"rule {self.name!r}: weights must sum to 1")

    @property
    def single(self) -> bool:
        return len(self.conditions) == 1

    @property
    def antecedent(self) -> FlexibleValue:
        return _single(self).conditions[0]

    @property
    def polarity(self) -> Polarity:
        return _single(self).polarities[0]


def make_rule(
    name: str,
    conditions: FlexibleValue | Sequence[FlexibleValue],
    consequent: FlexibleValue,
    combiner: Combiner = Combiner.CONJUNCTION,
    weights: Sequence[float] = (),
    polarity: Polarity | Sequence[Polarity] = Polarity.INCREASING,
) -> FlexibleRule:
    if isinstance(conditions, FlexibleValue):
        conditions = (conditions,)
    conditions = tuple(conditions)
    if isinstance(polarity, Polarity):
        polarity = (polarity,) * len(conditions)
    return FlexibleRule(name, conditions, consequent, combiner, tuple(weights), tuple(polarity))


def _single(rule: FlexibleRule) -> FlexibleRule:
    if not rule.single:
        raise MultiCondition(f"rule {rule.name!r} has {len(rule.conditions)} conditions; expected one")
    return rule


@dataclass(frozen=True)
class RigidEnvelope:
    x_interval: Interval
    y_interval: Interval
    kind: EnvelopeKind

    @property
    def area(self) -> float:
        return (self.x_interval[1] - self.x_interval[0]) * (self.y_interval[1] - self.y_interval[0])

    def contains(self, other: "RigidEnvelope") -> bool:
        return (
            self.x_interval[0] <= other.x_interval[0]
            and other.x_interval[1] <= self.x_interval[1]
            and self.y_interval[0] <= other.y_interval[0]
            and other.y_interval[1] <= self.y_interval[1]
        )


def rigid_envelope(rule: FlexibleRule, kind: EnvelopeKind) -> RigidEnvelope:
    """Crisp rectangle the rule occupies, clipped to the two universes."""
    a, b = rule.antecedent, rule.consequent
    if kind is EnvelopeKind.EXTENDED_CORE:
        xi, yi = a.extended_core, b.extended_core
    else:
        xi, yi = a.support, b.support
    return RigidEnvelope(a.universe.clip(xi), b.universe.clip(yi), kind)


@dataclass(frozen=True)
class AffineMap:
    """``y = y0 + slope * (x - x0)``"""

    x0: float
    y0: float
    slope: float

    def __call__(self, x: float) -> float:
        if x == self.x0:
            return self.y0
        return self.y0 + self.slope * (x - self.x0)


def _through(x1: float, y1: float, x0: float, y0: float) -> AffineMap:
    return AffineMap(x0, y0, (y0 - y1) / (x0 - x1))


def adjoint_function(rule: FlexibleRule) -> tuple[AffineMap, AffineMap]:
    """Left and right affine pieces through the peak pair.

    Each piece is anchored at the antecedent's extended-core endpoint on its
    side and sends it to the consequent's extended-core endpoint (same side
    for increasing rules, opposite side for decreasing ones).
    """
    a, b = rule.antecedent, rule.consequent
    (ae_lo, ae_hi), (be_lo, be_hi) = a.extended_core, b.extended_core
    if rule.polarity is Polarity.DECREASING:
        be_lo, be_hi = be_hi, be_lo
    left = _through(ae_lo, be_lo, a.peak, b.peak)
    right = _through(ae_hi, be_hi, a.peak, b.peak)
    return left, right


def antecedent_degree(rule: FlexibleRule, x: float | Sequence[float]) -> TruthDegree:
    xs = (x,) if isinstance(x, (int, float)) else tuple(x)
    if len(xs) != len(rule.conditions):
        raise ArityMismatch(
            f"rule {rule.name!r} has {len(rule.conditions)} conditions, got {len(xs)} inputs"
        )
    degrees = [c.consistency(xi) for c, xi in zip(rule.conditions, xs)]
    beta = max(c.beta for c in rule.conditions)
    if rule.combiner is Combiner.CONJUNCTION:
        t = min(degrees)
    elif rule.combiner is Combiner.DISJUNCTION:
        t = max(degrees)
    else:
        t = math.fsum(w * d for w, d in zip(rule.weights, degrees))
        # fsum rounding can land a hair outside the bracket
        t = min(max(t, min(degrees)), max(degrees))
    return TruthDegree(t, beta)
