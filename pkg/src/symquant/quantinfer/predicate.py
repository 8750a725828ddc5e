"""Quantified predicates: the unit of learning and of certificates."""

from collections.abc import Iterator
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import product

from ..ground.clause import GroundClause
from ..ground.constants import Constant
from ..ground.formula import G_TRUE, GAnd, GFormula, as_clause
from ..ground.instance import FiniteInstance, Frame
from ..spec.ast import (
    And,
    App,
    Const,
    Distinct,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Member,
    Or,
    Term,
    Var,
    walk,
)
from ..spec.printer import format_formula


class Polarity(str, Enum):
    UNIVERSAL = "forall"
    EXISTENTIAL = "exists"


@dataclass(frozen=True)
class QuantifierBlock:
    """Variables bound by one quantifier, with groups required pairwise distinct.

    Distinct groups are only meaningful on universal blocks, where they form
    the antecedent of the matrix.
    """

    polarity: Polarity
    variables: tuple[tuple[str, str], ...]
    distinct: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self) -> None:
        if not self.variables:
            raise ValueError("quantifier block without variables")
        sorts = dict(self.variables)
        if len(sorts) != len(self.variables):
            raise ValueError("variable bound twice in one block")
        for group in self.distinct:
            if len(group) < 2:
                raise ValueError(f"distinct group {group} has fewer than two variables")
            if any(v not in sorts for v in group):
                raise ValueError(f"distinct group {group} uses variables outside the block")
            if len({sorts[v] for v in group}) != 1:
                raise ValueError(f"distinct group {group} mixes sorts")


@dataclass(frozen=True)
class QuantifiedPredicate:
    """A prenex predicate ``Q1 ... Qn. (antecedent => body)``.

    The antecedent is the conjunction of the universal blocks' distinct
    groups and ``constraints`` (membership facts between universal
    variables). ``compact`` is False when inference had to fall back to a form
    whose variable count grows with the instance.
    """

    prefix: tuple[QuantifierBlock, ...]
    body: Formula
    constraints: tuple[Formula, ...] = ()
    compact: bool = field(default=True, compare=False)

    @property
    def universals(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            v for b in self.prefix if b.polarity is Polarity.UNIVERSAL for v in b.variables
        )

    @property
    def existentials(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            v for b in self.prefix if b.polarity is Polarity.EXISTENTIAL for v in b.variables
        )

    @property
    def distinct_groups(self) -> tuple[tuple[str, ...], ...]:
        return tuple(
            g for b in self.prefix if b.polarity is Polarity.UNIVERSAL for g in b.distinct
        )

    @property
    def universal_first(self) -> bool:
        seen_existential = False
        for block in self.prefix:
            if block.polarity is Polarity.EXISTENTIAL:
                seen_existential = True
            elif seen_existential:
                return False
        return True

    @property
    def antecedent(self) -> tuple[Formula, ...]:
        groups = tuple(Distinct(tuple(Var(v) for v in g)) for g in self.distinct_groups)
        return groups + self.constraints

    @property
    def matrix(self) -> Formula:
        antecedent = self.antecedent
        if not antecedent:
            return self.body
        condition = antecedent[0] if len(antecedent) == 1 else And(antecedent)
        return Implies(condition, self.body)

    def to_formula(self) -> Formula:
        result = self.matrix
        for block in reversed(self.prefix):
            if block.polarity is Polarity.UNIVERSAL:
                result = Forall(block.variables, result)
            else:
                result = Exists(block.variables, result)
        return result

    def text(self) -> str:
        return format_formula(self.to_formula())

    def variable_count(self, sort: str) -> int:
        return sum(1 for b in self.prefix for _, s in b.variables if s == sort)

    def has_constants(self) -> bool:
        return any(isinstance(t, Const) for t in _terms(self.to_formula()))

    def constant_count(self, sort: str) -> int:
        """Distinct instance constants of ``sort`` the predicate mentions."""
        return len({t for t in _terms(self.to_formula()) if isinstance(t, Const) and t.sort == sort})

    def with_prefix(self, prefix: tuple[QuantifierBlock, ...]) -> "QuantifiedPredicate":
        return replace(self, prefix=prefix)

    def __str__(self) -> str:
        return self.text()


def expand(pred: QuantifiedPredicate, inst: FiniteInstance, frame: Frame = Frame.CURRENT) -> GFormula:
    """Ground ``pred`` in ``inst``: universals to conjunctions, existentials to disjunctions."""
    return inst.ground(pred.to_formula(), frame)


def instantiations(
    pred: QuantifiedPredicate, inst: FiniteInstance
) -> Iterator[tuple[dict[str, Constant], GFormula]]:
    """Ground formula for each assignment of the leading universal variables.

    Only defined for universal-first predicates; the remaining existential
    part is expanded inside each instantiation.
    """
    if not pred.universal_first:
        raise ValueError("instantiations need a universal-first predicate")
    universals = pred.universals
    rest: Formula = pred.matrix
    existentials = pred.existentials
    if existentials:
        rest = Exists(existentials, rest)
    tables = [inst.constants[sort] for _, sort in universals]
    for combo in product(*tables):
        env = {var: c for (var, _), c in zip(universals, combo, strict=True)}
        yield env, inst.ground(rest, Frame.CURRENT, env)


def expand_clauses(pred: QuantifiedPredicate, inst: FiniteInstance) -> set[GroundClause] | None:
    """The ground clauses of ``pred`` when every instantiation is a conjunction of clauses.

    Tautological instantiations are dropped. Returns None if some
    instantiation has another shape.
    """
    if not pred.universal_first:
        return None
    clauses: set[GroundClause] = set()
    for _, g in instantiations(pred, inst):
        if g == G_TRUE:
            continue
        for part in g.args if isinstance(g, GAnd) else (g,):
            clause = as_clause(part)
            if clause is None:
                return None
            clauses.add(clause)
    return clauses


def body_disjuncts(pred: QuantifiedPredicate) -> tuple[Formula, ...]:
    return pred.body.args if isinstance(pred.body, Or) else (pred.body,)


def _terms(f: Formula) -> Iterator[Term]:
    for node in walk(f):
        match node:
            case App(_, args, _) | Distinct(args):
                yield from args
            case Member(element, group):
                yield element
                yield group
            case Eq(left, right):
                yield left
                yield right
