"""Infer a quantified predicate from a ground clause and its constant partitions.

Each sort of the protocol is handled in declaration order on one shared
draft: constants become variables, the prefix grows, and literals that
differ only in a constant of the sort collapse into a single template.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field, replace

from ..errors import InferencePreconditionError, InferenceShapeError
from ..ground.clause import GroundClause
from ..ground.constants import Constant
from ..ground.instance import FiniteInstance
from ..spec.ast import (
    And,
    App,
    Const,
    Distinct,
    Formula,
    Member,
    Not,
    Or,
    Term,
    Var,
)
from ..symmetry.orbit import Partition, logical_orbit, partition
from ..symmetry.permutation import SymmetryGroup
from .predicate import Polarity, QuantifiedPredicate, QuantifierBlock, expand_clauses

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Group:
    """``distinct(excluded..., variable) and (template)`` for an existential ``variable``."""

    variable: str
    excluded: tuple[str, ...]
    literals: tuple[Formula, ...]

    def formula(self) -> Formula:
        body = self.literals[0] if len(self.literals) == 1 else Or(self.literals)
        if not self.excluded:
            return body
        return And((Distinct(tuple(Var(v) for v in (*self.excluded, self.variable))), body))


_Item = Formula | _Group


def _literal_app(item: Formula) -> App:
    return item.arg if isinstance(item, Not) else item  # type: ignore[return-value]


def _substitute(item: _Item, mapping: dict[Const, Term]) -> _Item:
    if isinstance(item, _Group):
        return replace(item, literals=tuple(_substitute(lit, mapping) for lit in item.literals))  # type: ignore[misc]
    app = _literal_app(item)
    renamed = App(app.name, tuple(mapping.get(a, a) for a in app.args), app.primed)  # type: ignore[arg-type]
    return Not(renamed) if isinstance(item, Not) else renamed


def _constants_in(item: _Item, sort: str) -> set[Const]:
    if isinstance(item, _Group):
        return {c for lit in item.literals for c in _constants_in(lit, sort)}
    return {a for a in _literal_app(item).args if isinstance(a, Const) and a.sort == sort}


@dataclass
class Draft:
    """A predicate under construction.

    Attributes:
        inst: Instance the clause lives in
        items: Body disjuncts: template literals and existential groups
        universals: Universal variables with their sorts
        existentials: Existential variables with their sorts
        distinct: Groups of universal variables required pairwise distinct
        origins: The constant each universal variable replaced
        compact: False once a fallback made the predicate size-dependent
    """

    inst: FiniteInstance
    items: list[_Item]
    universals: list[tuple[str, str]] = field(default_factory=list)
    existentials: list[tuple[str, str]] = field(default_factory=list)
    distinct: list[tuple[str, ...]] = field(default_factory=list)
    origins: dict[str, Constant] = field(default_factory=dict)
    compact: bool = True
    _counters: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_clause(cls, phi: GroundClause, inst: FiniteInstance) -> "Draft":
        items: list[_Item] = []
        for lit in inst.sorted_literals(phi):
            sorts = inst.signature(lit.atom.symbol)
            args = tuple(
                Const(inst.constant(s, i).name, s, i)
                for s, i in zip(sorts, lit.atom.args, strict=True)
            )
            app = App(lit.atom.symbol, args)
            items.append(app if lit.positive else Not(app))
        return cls(inst, items)

    def fresh(self, sort: str) -> str:
        n = self._counters.get(sort, 0) + 1
        self._counters[sort] = n
        return f"{sort.upper()}{n}"

    def constant_term(self, sort: str, index: int) -> Const:
        c = self.inst.constant(sort, index)
        return Const(c.name, sort, index)

    def substitute(self, mapping: dict[Const, Term]) -> None:
        self.items = [_substitute(item, mapping) for item in self.items]

    def universally(self, sort: str, indices: Iterable[int]) -> list[str]:
        """Replace each constant by a fresh universal variable; returns the variables."""
        mapping: dict[Const, Term] = {}
        names = []
        for index in indices:
            name = self.fresh(sort)
            names.append(name)
            mapping[self.constant_term(sort, index)] = Var(name)
            self.universals.append((name, sort))
            self.origins[name] = self.inst.constant(sort, index)
        self.substitute(mapping)
        return names

    def membership_constraints(self) -> tuple[Formula, ...]:
        """Membership facts between universal variables, as they held between their constants."""
        constraints: list[Formula] = []
        spec = self.inst.spec
        for dep_var, dep_sort in self.universals:
            decl = spec.sort(dep_sort)
            if not decl.is_dependent:
                continue
            group = self.origins[dep_var]
            for base_var, base_sort in self.universals:
                if base_sort != decl.base:
                    continue
                fact = Member(Var(base_var), Var(dep_var))
                member = self.origins[base_var].index in group.members
                constraints.append(fact if member else Not(fact))
        return tuple(constraints)

    def to_predicate(self) -> QuantifiedPredicate:
        prefix = []
        if self.universals:
            prefix.append(
                QuantifierBlock(Polarity.UNIVERSAL, tuple(self.universals), tuple(self.distinct))
            )
        if self.existentials:
            prefix.append(QuantifierBlock(Polarity.EXISTENTIAL, tuple(self.existentials)))
        disjuncts = tuple(i.formula() if isinstance(i, _Group) else i for i in self.items)
        body = disjuncts[0] if len(disjuncts) == 1 else Or(disjuncts)
        return QuantifiedPredicate(
            tuple(prefix), body, self.membership_constraints(), self.compact
        )


def _require_full(sort: str, part: Partition, inst: FiniteInstance) -> None:
    if part.count != inst.size(sort):
        raise InferencePreconditionError(
            f"sort {sort}: {part.count} of {inst.size(sort)} constants occur, "
            "existential inference needs all of them"
        )


def _template(draft: Draft, sort: str, index: int, variable: str) -> tuple[Formula, ...]:
    """Literals mentioning constant ``index`` of ``sort``, with it replaced by ``variable``."""
    c = draft.constant_term(sort, index)
    found = [
        item for item in draft.items if not isinstance(item, _Group) and c in _constants_in(item, sort)
    ]
    return tuple(_substitute(item, {c: Var(variable)}) for item in found)  # type: ignore[misc]


def _collapse(draft: Draft, sort: str, cell: tuple[int, ...], variable: str) -> tuple[Formula, ...]:
    """Check that the constants of ``cell`` share one template and remove their literals.

    Raises:
        InferenceShapeError: a literal holds two constants of the cell, a
            constant sits in an existential group, or templates differ
    """
    members = {draft.constant_term(sort, i) for i in cell}
    for item in draft.items:
        inside = _constants_in(item, sort) & members
        if isinstance(item, _Group) and inside:
            raise InferenceShapeError(f"sort {sort}: constants already inside an existential group")
        if len(inside) > 1:
            raise InferenceShapeError(f"sort {sort}: a literal relates two constants of one cell")
    templates = [_template(draft, sort, i, variable) for i in cell]
    if any(set(t) != set(templates[0]) for t in templates[1:]):
        raise InferenceShapeError(f"sort {sort}: constants of one cell have different templates")
    if not templates[0]:
        raise InferenceShapeError(f"sort {sort}: empty template")
    kept: list[_Item] = []
    for item in draft.items:
        if not isinstance(item, _Group) and _constants_in(item, sort) & members:
            continue
        kept.append(item)
    draft.items = kept
    return templates[0]


def _forall(draft: Draft, sort: str, part: Partition) -> None:
    if part.count >= draft.inst.size(sort):
        raise InferencePreconditionError(
            f"sort {sort}: all {part.count} constants occur, universal inference needs fewer"
        )
    names = draft.universally(sort, sorted(i for cell in part.cells for i in cell))
    if len(names) > 1:
        draft.distinct.append(tuple(names))


def _exists(draft: Draft, sort: str, part: Partition) -> None:
    _require_full(sort, part, draft.inst)
    if not part.is_unit:
        raise InferencePreconditionError(f"sort {sort}: partition has {len(part.cells)} cells")
    variable = draft.fresh(sort)
    template = _collapse(draft, sort, part.cells[0], variable)
    draft.items.extend(template)
    draft.existentials.append((variable, sort))


def _split_cells(sort: str, part: Partition) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    big = part.big_cells
    if len(big) != 1:
        raise InferenceShapeError(f"sort {sort}: {len(big)} cells with several constants")
    return part.singletons, big[0]


def _forall_exists(draft: Draft, sort: str, part: Partition) -> None:
    _require_full(sort, part, draft.inst)
    if part.is_unit:
        raise InferencePreconditionError(f"sort {sort}: partition has a single cell")
    singles, cell = _split_cells(sort, part)
    # shape errors must surface before the draft is touched
    for item in draft.items:
        if isinstance(item, _Group) and _constants_in(item, sort):
            raise InferenceShapeError(f"sort {sort}: constants already inside an existential group")
    names = draft.universally(sort, (c[0] for c in singles))
    if len(names) > 1:
        draft.distinct.append(tuple(names))
    variable = draft.fresh(sort)
    template = _collapse(draft, sort, cell, variable)
    draft.items.append(_Group(variable, tuple(names), template))
    draft.existentials.append((variable, sort))


def _snapshot(draft: Draft) -> Draft:
    return replace(
        draft,
        items=list(draft.items),
        universals=list(draft.universals),
        existentials=list(draft.existentials),
        distinct=list(draft.distinct),
        origins=dict(draft.origins),
        _counters=dict(draft._counters),
    )


def infer_forall(
    phi: GroundClause, sort: str, part: Partition, inst: FiniteInstance
) -> QuantifiedPredicate:
    """Universally quantify the constants of ``sort``, pairwise distinct.

    Raises:
        InferencePreconditionError: every constant of ``sort`` occurs in ``phi``
    """
    draft = Draft.from_clause(phi, inst)
    _forall(draft, sort, part)
    return draft.to_predicate()


def infer_exists(
    phi: GroundClause, sort: str, part: Partition, inst: FiniteInstance
) -> QuantifiedPredicate:
    """Collapse a unit partition covering the whole sort into one existential variable.

    Raises:
        InferencePreconditionError: partition not unit or not covering the sort
        InferenceShapeError: the literal templates do not coincide
    """
    draft = Draft.from_clause(phi, inst)
    _exists(draft, sort, part)
    return draft.to_predicate()


def infer_forall_exists(
    phi: GroundClause, sort: str, part: Partition, inst: FiniteInstance
) -> QuantifiedPredicate:
    """Universals for the singleton cells, one existential for the remaining cell.

    Raises:
        InferencePreconditionError: partition not covering the sort, or unit
        InferenceShapeError: more than one multi-constant cell, or templates differ
    """
    draft = Draft.from_clause(phi, inst)
    _forall_exists(draft, sort, part)
    return draft.to_predicate()


def _all_universal(phi: GroundClause, inst: FiniteInstance, group: SymmetryGroup) -> QuantifiedPredicate:
    draft = Draft.from_clause(phi, inst)
    for sort in inst.spec.sorts:
        part = partition(phi, sort.name, group)
        if part.count == 0:
            continue
        names = draft.universally(sort.name, sorted(i for cell in part.cells for i in cell))
        if len(names) > 1:
            draft.distinct.append(tuple(names))
        if part.count >= inst.size(sort.name):
            draft.compact = False
    return draft.to_predicate()


def orbit_predicate(orbit: Iterable[GroundClause], inst: FiniteInstance) -> QuantifiedPredicate:
    """Quantifier-free conjunction of an explicit orbit, over instance constants."""
    conjuncts: list[Formula] = []
    for clause in sorted(orbit, key=lambda c: [inst.literal_key(lit) for lit in inst.sorted_literals(c)]):
        draft = Draft.from_clause(clause, inst)
        conjuncts.append(draft.items[0] if len(draft.items) == 1 else Or(tuple(draft.items)))  # type: ignore[arg-type]
    body = conjuncts[0] if len(conjuncts) == 1 else And(tuple(conjuncts))
    return QuantifiedPredicate((), body, (), compact=False)


def sym_boost(
    phi: GroundClause,
    inst: FiniteInstance,
    group: SymmetryGroup | None = None,
    self_check: bool = True,
) -> QuantifiedPredicate:
    """Quantified predicate whose expansion is the logical orbit of ``phi``.

    Sorts are processed in declaration order. A sort whose constants do not
    fit any quantifier pattern is quantified universally over the occurring
    constants and the predicate is marked non-compact. When the group is
    small enough to enumerate, the expansion is compared with the orbit;
    a mismatch falls back to an all-universal form and then to the orbit
    itself.

    Raises:
        InferencePreconditionError: ``phi`` is empty
    """
    if not len(phi):
        raise InferencePreconditionError("cannot generalize the empty clause")
    group = group or SymmetryGroup(inst)
    draft = Draft.from_clause(phi, inst)
    for sort in inst.spec.sorts:
        part = partition(phi, sort.name, group)
        if part.count == 0:
            continue
        saved = _snapshot(draft)
        try:
            if part.count < inst.size(sort.name):
                _forall(draft, sort.name, part)
            elif part.is_unit:
                _exists(draft, sort.name, part)
            else:
                _forall_exists(draft, sort.name, part)
        except InferenceShapeError as exc:
            logger.warning("sort %s: %s; quantifying it universally", sort.name, exc)
            draft = saved
            names = draft.universally(sort.name, sorted(i for cell in part.cells for i in cell))
            if len(names) > 1:
                draft.distinct.append(tuple(names))
            draft.compact = False
    pred = draft.to_predicate()
    if not self_check or group.order > group.max_order:
        return pred
    return _checked(phi, pred, inst, group)


def _checked(
    phi: GroundClause, pred: QuantifiedPredicate, inst: FiniteInstance, group: SymmetryGroup
) -> QuantifiedPredicate:
    orbit = logical_orbit(phi, group)
    if expand_clauses(pred, inst) == orbit:
        return pred
    logger.warning("expansion of %s differs from the orbit; retrying universally", pred)
    plain = _all_universal(phi, inst, group)
    if expand_clauses(plain, inst) == orbit:
        return plain
    logger.warning("no quantified form for an orbit of %d clauses; keeping it explicit", len(orbit))
    return orbit_predicate(orbit, inst)
