"""Finite instances: constant tables, ground state variables and ground formulas."""

from .clause import Atom, GroundClause, GroundCube, Literal
from .constants import Constant, SizeAssignment, majority_count, majority_subsets
from .formula import (
    G_FALSE,
    G_TRUE,
    GAnd,
    GAtom,
    GConst,
    GFormula,
    GIff,
    GNot,
    GOr,
    as_clause,
    clause_formula,
    cube_formula,
    literal_formula,
    mk_and,
    mk_iff,
    mk_implies,
    mk_not,
    mk_or,
    prime,
)
from .instance import (
    MAX_STATE_VARS,
    FiniteInstance,
    Frame,
    GroundAction,
    build_instance,
    ground_formula,
    state_as_cube,
)
from .semantics import evaluate_formula

__all__ = [
    "G_FALSE",
    "G_TRUE",
    "MAX_STATE_VARS",
    "Atom",
    "Constant",
    "FiniteInstance",
    "Frame",
    "GAnd",
    "GAtom",
    "GConst",
    "GFormula",
    "GIff",
    "GNot",
    "GOr",
    "GroundAction",
    "GroundClause",
    "GroundCube",
    "Literal",
    "SizeAssignment",
    "as_clause",
    "build_instance",
    "clause_formula",
    "cube_formula",
    "evaluate_formula",
    "ground_formula",
    "literal_formula",
    "majority_count",
    "majority_subsets",
    "mk_and",
    "mk_iff",
    "mk_implies",
    "mk_not",
    "mk_or",
    "prime",
    "state_as_cube",
]
