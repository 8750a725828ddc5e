"""Consecution: the candidate is closed under the transition relation.

Each conjunct is checked separately against the whole candidate in the
current state, so a failure names the conjunct that breaks.
"""

from ..ground.formula import mk_not, prime
from ..solver.session import TRANS, SolverSession
from .base import BaseCheck, Candidate, CheckResult


class ConsecutionCheck(BaseCheck):
    """``C_all ∧ T ⇒ C'`` for every conjunct ``C``."""

    def __init__(self):
        super().__init__(name="consecution")

    def run(self, session: SolverSession, candidate: Candidate) -> CheckResult:
        errors = []
        warnings = []
        passed = 0
        inv = candidate.formula
        for name, conjunct in zip(candidate.names, candidate.conjuncts, strict=True):
            query = {"inv": inv, "goal": mk_not(prime(conjunct))}
            result = session.check(query, active=[TRANS], kind="consecution")
            if result.is_unsat:
                passed += 1
                continue
            if result.is_sat:
                errors.append(f"{name} is not preserved by some transition")
            else:
                errors.append(f"solver could not decide consecution of {name}: {result.reason}")
        if len(candidate.conjuncts) == 1:
            warnings.append("candidate has no strengthening conjuncts")
        return CheckResult(
            passed=not errors,
            errors=errors,
            warnings=warnings,
            checks_performed=len(candidate.conjuncts),
            checks_passed=passed,
        )
