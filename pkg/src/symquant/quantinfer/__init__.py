"""Quantified predicates inferred from ground clauses."""

from .inference import (
    infer_exists,
    infer_forall,
    infer_forall_exists,
    orbit_predicate,
    sym_boost,
)
from .predicate import (
    Polarity,
    QuantifiedPredicate,
    QuantifierBlock,
    expand,
    expand_clauses,
    instantiations,
)
from .reductions import AlternationGraph, FrameOracle, antecedent_reduction, epr_reduction

__all__ = [
    "AlternationGraph",
    "FrameOracle",
    "Polarity",
    "QuantifiedPredicate",
    "QuantifierBlock",
    "antecedent_reduction",
    "epr_reduction",
    "expand",
    "expand_clauses",
    "infer_exists",
    "infer_forall",
    "infer_forall_exists",
    "instantiations",
    "orbit_predicate",
    "sym_boost",
]
