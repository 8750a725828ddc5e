"""Ground checks that a candidate invariant is inductive and safe."""

from ..solver.session import SolverSession
from .base import BaseCheck, Candidate, CheckResult
from .consecution import ConsecutionCheck
from .initiation import InitiationCheck
from .safety import SafetyCheck


def default_checks() -> list[BaseCheck]:
    return [InitiationCheck(), ConsecutionCheck(), SafetyCheck()]


def check_invariant(session: SolverSession, candidate: Candidate) -> list[CheckResult]:
    """Run initiation, consecution and safety; results in that order."""
    return [check.run(session, candidate) for check in default_checks()]


__all__ = [
    "BaseCheck",
    "Candidate",
    "CheckResult",
    "ConsecutionCheck",
    "InitiationCheck",
    "SafetyCheck",
    "check_invariant",
    "default_checks",
]
