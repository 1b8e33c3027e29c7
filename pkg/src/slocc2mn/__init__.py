"""Exact SLOCC classification of pure 2 x M x N quantum states."""

from .acceptance import CriterionResult, run_all
from .catalog import ClassId, build, build_exceptional, enumerate_classes, parse_class_id
from .classify import Classification, EquivalenceVerdict, are_equivalent, classify
from .exact import Scalar, parse_scalar
from .pencil import (
    Count,
    INFINITE,
    KroneckerData,
    RangeSignature,
    kronecker_data,
    multipartite_signature,
    range_signature,
    rank_profile_set,
)
from .states import PureState, emit_state, parse_state

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ClassId",
    "Count",
    "CriterionResult",
    "EquivalenceVerdict",
    "INFINITE",
    "KroneckerData",
    "PureState",
    "RangeSignature",
    "Scalar",
    "are_equivalent",
    "build",
    "build_exceptional",
    "classify",
    "emit_state",
    "enumerate_classes",
    "kronecker_data",
    "multipartite_signature",
    "parse_class_id",
    "parse_scalar",
    "parse_state",
    "range_signature",
    "rank_profile_set",
    "run_all",
]
