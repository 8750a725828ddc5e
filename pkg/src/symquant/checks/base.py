"""Base class for ground checks of a candidate inductive invariant."""

from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass, field

from ..ground.formula import GFormula, mk_and
from ..solver.session import SolverSession


@dataclass
class CheckResult:
    """Result of one invariant check.

    Attributes:
        passed: Whether every query of the check was unsatisfiable
        errors: One message per failing conjunct
        warnings: Informational notes
        checks_performed: Number of solver queries issued
        checks_passed: Number of queries that came back unsat
    """

    passed: bool
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    checks_performed: int = 0
    checks_passed: int = 0

    def __post_init__(self):
        if self.checks_passed > self.checks_performed:
            raise ValueError(
                f"checks_passed ({self.checks_passed}) exceeds "
                f"checks_performed ({self.checks_performed})"
            )


@dataclass(frozen=True)
class Candidate:
    """A candidate invariant ``P ∧ A1 ∧ ... ∧ An`` grounded in one instance.

    Attributes:
        conjuncts: Ground safety property first, then each strengthening expansion
        names: Printable name of each conjunct, same order
    """

    conjuncts: tuple[GFormula, ...]
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.conjuncts) != len(self.names):
            raise ValueError("every conjunct needs a name")

    @classmethod
    def build(
        cls, safety: GFormula, strengthening: Sequence[GFormula], names: Sequence[str] = ()
    ) -> "Candidate":
        names = list(names) or [f"A{k + 1}" for k in range(len(strengthening))]
        return cls((safety, *strengthening), ("safety", *names))

    @property
    def formula(self) -> GFormula:
        return mk_and(self.conjuncts)


class BaseCheck(ABC):
    """A property of a candidate invariant decided with ground solver queries.

    Attributes:
        name: Human-readable check name
    """

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def run(self, session: SolverSession, candidate: Candidate) -> CheckResult:
        """Decide the property in ``session``'s instance.

        Raises:
            SolverError: the solver failed or answered unknown
        """

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
