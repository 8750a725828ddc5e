"""Safety: the candidate implies the safety property."""

from ..ground.formula import mk_not
from ..solver.session import SolverSession
from .base import BaseCheck, Candidate, CheckResult


class SafetyCheck(BaseCheck):
    def __init__(self):
        super().__init__(name="safety")

    def run(self, session: SolverSession, candidate: Candidate) -> CheckResult:
        query = {"inv": candidate.formula, "bad": mk_not(session.inst.safety)}
        if session.is_unsat(query, kind="safety"):
            return CheckResult(passed=True, checks_performed=1, checks_passed=1)
        return CheckResult(
            passed=False,
            errors=["candidate admits a state violating the safety property"],
            checks_performed=1,
        )
