"""Scalar truth-degrees on a ``[0, beta]`` scale.

Connectives are min / max / ``beta - t``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import BadBeta, BetaMismatch, ValidationError
from .values import FlexibleValue


class TruthClass(enum.Enum):
    NEAR_TRUE = "near-true"
    ROUGH_TRUE = "rough-true"
    DEGREE_TRUE = "degree-true"
    NOT_TRUE = "not-true"


@dataclass(frozen=True, order=True)
class TruthDegree:
    value: float
    beta: float = 1.0
    # degree this one was complemented from; makes neg an exact involution
    _negated_from: float | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.beta < 1.0:
            raise BadBeta(f"beta must be >= 1, got {self.beta}")
        if not 0.0 <= self.value <= self.beta:
            raise ValidationError(f"truth-degree {self.value} outside [0, {self.beta}]")

    def __float__(self) -> float:
        return self.value

    @property
    def near_true(self) -> bool:
        return self.value > 0.5

    @property
    def degree_true(self) -> bool:
        return self.value > 0.0


def truth_of_atom(value: FlexibleValue, x0: float) -> TruthDegree:
    """Truth-degree of the proposition "x0 is <value>"."""
    return TruthDegree(value.consistency(x0), value.beta)


def _same_beta(a: TruthDegree, b: TruthDegree) -> float:
    if a.beta != b.beta:
        raise BetaMismatch(f"operands on different scales: beta={a.beta} vs beta={b.beta}")
    return a.beta


def conj(t1: TruthDegree, t2: TruthDegree) -> TruthDegree:
    return TruthDegree(min(t1.value, t2.value), _same_beta(t1, t2))


def disj(t1: TruthDegree, t2: TruthDegree) -> TruthDegree:
    return TruthDegree(max(t1.value, t2.value), _same_beta(t1, t2))


def neg(t: TruthDegree) -> TruthDegree:
    if t._negated_from is not None:
        return TruthDegree(t._negated_from, t.beta)
    return TruthDegree(t.beta - t.value, t.beta, _negated_from=t.value)


def classify_truth(t: TruthDegree | float) -> TruthClass:
    v = t.value if isinstance(t, TruthDegree) else float(t)
    if v > 0.5:
        return TruthClass.NEAR_TRUE
    if v == 0.5:
        return TruthClass.ROUGH_TRUE
    if v > 0.0:
        return TruthClass.DEGREE_TRUE
    return TruthClass.NOT_TRUE
