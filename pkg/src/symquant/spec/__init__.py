"""Protocol specification language: syntax tree, parser, printer and typechecker."""

from .ast import (
    FALSE,
    TRUE,
    ActionDecl,
    And,
    App,
    BoolConst,
    Const,
    Distinct,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    ProtocolSpec,
    RelationDecl,
    RelationRole,
    SortDecl,
    SortKind,
    Term,
    Var,
)
from .parser import parse_certificate, parse_formula, parse_spec
from .printer import format_formula, print_spec
from .typecheck import load_spec, typecheck

__all__ = [
    "FALSE",
    "TRUE",
    "ActionDecl",
    "And",
    "App",
    "BoolConst",
    "Const",
    "Distinct",
    "Eq",
    "Exists",
    "Forall",
    "Formula",
    "Iff",
    "Implies",
    "Member",
    "Not",
    "Or",
    "ProtocolSpec",
    "RelationDecl",
    "RelationRole",
    "SortDecl",
    "SortKind",
    "Term",
    "Var",
    "format_formula",
    "load_spec",
    "parse_certificate",
    "parse_formula",
    "parse_spec",
    "print_spec",
    "typecheck",
]
