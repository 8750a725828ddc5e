"""External SMT-LIB2 solver sessions, models and minimal unsat cores."""

from .mus import minimal_unsat_core
from .session import (
    TRANS,
    SolverResult,
    SolverSession,
    SolverStats,
    Verdict,
    open_session,
    parse_core,
    parse_model,
    resolve_solver_command,
)
from .smtlib import atom_name, atom_symbol, to_smt, vocabulary

__all__ = [
    "TRANS",
    "SolverResult",
    "SolverSession",
    "SolverStats",
    "Verdict",
    "atom_name",
    "atom_symbol",
    "minimal_unsat_core",
    "open_session",
    "parse_core",
    "parse_model",
    "resolve_solver_command",
    "to_smt",
    "vocabulary",
]
