"""Abstract syntax of protocol specifications.

All nodes are frozen dataclasses, so structurally equal specs compare equal
and can be hashed.
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum

# Terms


@dataclass(frozen=True)
class Var:
    """A bound variable or action parameter."""

    name: str


@dataclass(frozen=True)
class Const:
    """A constant of a finite instance, only found in predicates built from ground clauses."""

    name: str
    sort: str
    index: int


Term = Var | Const


# Formulas


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class App:
    """Application of a state relation or a definition, current or primed."""

    name: str
    args: tuple[Term, ...] = ()
    primed: bool = False


@dataclass(frozen=True)
class Member:
    """Builtin membership of a base-sort term in a dependent-sort term."""

    element: Term
    group: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Distinct:
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    bindings: tuple[tuple[str, str], ...]
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    bindings: tuple[tuple[str, str], ...]
    body: "Formula"


Formula = (
    BoolConst | App | Member | Eq | Distinct | Iff | Not | And | Or | Implies | Forall | Exists
)

TRUE = BoolConst(True)
FALSE = BoolConst(False)


def children(f: Formula) -> tuple[Formula, ...]:
    """Direct sub-formulas of ``f``."""
    match f:
        case Not(arg):
            return (arg,)
        case And(args) | Or(args):
            return args
        case Implies(left, right) | Iff(left, right):
            return (left, right)
        case Forall(_, body) | Exists(_, body):
            return (body,)
        case _:
            return ()


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal of ``f`` and all its sub-formulas."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def applications(f: Formula) -> Iterator[App]:
    for node in walk(f):
        if isinstance(node, App):
            yield node


# Declarations


class SortKind(str, Enum):
    INDEPENDENT = "independent"
    DEPENDENT = "dependent"


class RelationRole(str, Enum):
    STATE = "state"
    DEFINITION = "definition"
    MEMBERSHIP = "builtin-membership"


MEMBERSHIP_NAME = "member"


@dataclass(frozen=True)
class SortDecl:
    """A sort; dependent sorts are the majority subsets of their base sort."""

    name: str
    kind: SortKind = SortKind.INDEPENDENT
    base: str | None = None

    @property
    def is_dependent(self) -> bool:
        return self.kind is SortKind.DEPENDENT


@dataclass(frozen=True)
class RelationDecl:
    """A relation symbol.

    Definitions carry their parameter names and defining formula; state and
    membership relations leave ``params`` empty and ``body`` unset.
    """

    name: str
    arg_sorts: tuple[str, ...]
    role: RelationRole = RelationRole.STATE
    params: tuple[str, ...] = ()
    body: Formula | None = None


@dataclass(frozen=True)
class ActionDecl:
    """A guarded action; relations absent from ``updates`` keep their value."""

    name: str
    params: tuple[tuple[str, str], ...]
    guard: Formula
    updates: tuple[tuple[str, Formula], ...] = ()

    @property
    def updated_relations(self) -> tuple[str, ...]:
        return tuple(rel for rel, _ in self.updates)


@dataclass(frozen=True)
class ProtocolSpec:
    """A validated protocol: vocabulary, initial states, actions and safety property."""

    sorts: tuple[SortDecl, ...]
    relations: tuple[RelationDecl, ...]
    axioms: tuple[Formula, ...]
    init: Formula
    actions: tuple[ActionDecl, ...]
    safety: Formula
    _by_name: dict[str, RelationDecl] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        table = {r.name: r for r in self.relations if r.role is not RelationRole.MEMBERSHIP}
        object.__setattr__(self, "_by_name", table)

    def sort(self, name: str) -> SortDecl:
        for decl in self.sorts:
            if decl.name == name:
                return decl
        raise KeyError(name)

    def has_sort(self, name: str) -> bool:
        return any(decl.name == name for decl in self.sorts)

    def relation(self, name: str) -> RelationDecl:
        """State relation or definition named ``name``."""
        return self._by_name[name]

    def has_relation(self, name: str) -> bool:
        return name in self._by_name

    def action(self, name: str) -> ActionDecl:
        for decl in self.actions:
            if decl.name == name:
                return decl
        raise KeyError(name)

    @property
    def independent_sorts(self) -> tuple[SortDecl, ...]:
        return tuple(s for s in self.sorts if not s.is_dependent)

    @property
    def dependent_sorts(self) -> tuple[SortDecl, ...]:
        return tuple(s for s in self.sorts if s.is_dependent)

    @property
    def state_relations(self) -> tuple[RelationDecl, ...]:
        return tuple(r for r in self.relations if r.role is RelationRole.STATE)

    @property
    def definitions(self) -> tuple[RelationDecl, ...]:
        return tuple(r for r in self.relations if r.role is RelationRole.DEFINITION)
