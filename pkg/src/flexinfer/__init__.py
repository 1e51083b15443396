"""Flexible linguistic values and near-true approximate reasoning.

Also ships a classical fuzzy (CRI / Mamdani) baseline and a harness
comparing the two on rule-based function approximation.
"""
__version__ = "0.1.0"

from .errors import FlexError, InferenceError, ValidationError  # noqa: F401
from .values import (  # noqa: F401
    FlexiblePartition,
    FlexibleValue,
    Side,
    Universe,
    classify,
    consistency,
    make_flexible_value,
    make_triangular_partition,
    membership,
)
from .truth import TruthClass, TruthDegree, classify_truth, conj, disj, neg, truth_of_atom  # noqa: F401
from .rules import (  # noqa: F401
    Combiner,
    EnvelopeKind,
    FlexibleRule,
    Polarity,
    adjoint_function,
    antecedent_degree,
    make_rule,
    rigid_envelope,
)
from .inference import (  # noqa: F401
    InferenceResult,
    Method,
    at_method,
    degree_inference,
    interpolation_eval,
    ln_conversion,
    natural_inference,
    parallel_degree_inference,
)
