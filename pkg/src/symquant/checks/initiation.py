"""Initiation: every initial state satisfies the candidate."""

from ..ground.formula import mk_not
from ..solver.session import SolverSession
from .base import BaseCheck, Candidate, CheckResult


class InitiationCheck(BaseCheck):
    """``Init ⇒ C`` for every conjunct ``C``, one query per conjunct."""

    def __init__(self):
        super().__init__(name="initiation")

    def run(self, session: SolverSession, candidate: Candidate) -> CheckResult:
        errors = []
        passed = 0
        init = session.inst.init
        for name, conjunct in zip(candidate.names, candidate.conjuncts, strict=True):
            if session.is_unsat({"init": init, "goal": mk_not(conjunct)}, kind="initiation"):
                passed += 1
            else:
                errors.append(f"{name} does not hold in some initial state")
        return CheckResult(
            passed=not errors,
            errors=errors,
            checks_performed=len(candidate.conjuncts),
            checks_passed=passed,
        )
