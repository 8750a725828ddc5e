"""Size scheduling, convergence checks and the top-level verification loop."""

from .cutoff import CutoffResult, SortCheck, check_cutoff
from .driver import ResourcesExhausted, Safe, Verdict, Violated, run, verdict_result
from .results import RunResult, RunStats, format_certificate, write_certificate, write_result
from .schedule import SizeSchedule, default_sizes, state_var_count
from .unbounded import (
    UnboundedStatus,
    emit_unbounded_check,
    formula_to_smt,
    run_unbounded,
    unbounded_script,
)

__all__ = [
    "CutoffResult",
    "ResourcesExhausted",
    "RunResult",
    "RunStats",
    "Safe",
    "SizeSchedule",
    "SortCheck",
    "UnboundedStatus",
    "Verdict",
    "Violated",
    "check_cutoff",
    "default_sizes",
    "emit_unbounded_check",
    "format_certificate",
    "formula_to_smt",
    "run",
    "run_unbounded",
    "state_var_count",
    "unbounded_script",
    "verdict_result",
    "write_certificate",
    "write_result",
]
