"""Ground literals, clauses and cubes."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Atom:
    """A relation or definition applied to constants (0-based indices per argument sort)."""

    symbol: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True, order=True)
class Literal:
    atom: Atom
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)


class _LiteralSet:
    """Immutable set of literals without complementary pairs."""

    __slots__ = ("literals", "_hash")
    kind = "literal set"

    def __init__(self, literals: Iterable[Literal]):
        lits = frozenset(literals)
        for lit in lits:
            if lit.negate() in lits:
                raise ValueError(f"{self.kind} contains {lit.atom} with both polarities")
        self.literals = lits
        self._hash = hash((type(self).__name__, lits))

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __contains__(self, lit: object) -> bool:
        return lit in self.literals

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and other.literals == self.literals  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            ("" if lit.positive else "~") + f"{lit.atom.symbol}{list(lit.atom.args)}"
            for lit in sorted(self.literals)
        )
        return f"{type(self).__name__}({body})"

    def atoms(self) -> set[Atom]:
        return {lit.atom for lit in self.literals}


class GroundClause(_LiteralSet):
    """Disjunction of ground literals."""

    kind = "clause"

    def negate(self) -> "GroundCube":
        return GroundCube(lit.negate() for lit in self.literals)


class GroundCube(_LiteralSet):
    """Conjunction of ground literals."""

    kind = "cube"

    def negate(self) -> GroundClause:
        return GroundClause(lit.negate() for lit in self.literals)

    def without(self, lit: Literal) -> "GroundCube":
        return GroundCube(self.literals - {lit})
