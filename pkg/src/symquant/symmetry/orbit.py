"""Logical orbits and sort-constant partitions of ground clauses."""

from dataclasses import dataclass

from ..ground.clause import GroundClause
from .permutation import SymmetryGroup


@dataclass(frozen=True)
class Partition:
    """Constants of one sort occurring in a clause, grouped by identical occurrence.

    Attributes:
        sort: The sort
        cells: Groups of constant indices; cells and their members sorted
        count: Number of constants of ``sort`` occurring in the clause
    """

    sort: str
    cells: tuple[tuple[int, ...], ...]
    count: int

    def __post_init__(self) -> None:
        total = sum(len(cell) for cell in self.cells)
        if total != self.count:
            raise ValueError(f"cells cover {total} constants, count is {self.count}")

    @property
    def is_unit(self) -> bool:
        return len(self.cells) == 1

    @property
    def singletons(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cell for cell in self.cells if len(cell) == 1)

    @property
    def big_cells(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cell for cell in self.cells if len(cell) > 1)


def occurring_constants(phi: GroundClause, sort: str, group: SymmetryGroup) -> list[int]:
    inst = group.inst
    found = set()
    for lit in phi:
        for arg_sort, index in zip(inst.signature(lit.atom.symbol), lit.atom.args, strict=True):
            if arg_sort == sort:
                found.add(index)
    return sorted(found)


def _swap(phi: GroundClause, sort: str, i: int, j: int, group: SymmetryGroup) -> GroundClause:
    if group.inst.spec.sort(sort).is_dependent:
        return group.swap_dependent(phi, sort, i, j)
    return group.apply(group.transposition(sort, i, j), phi)


def partition(phi: GroundClause, sort: str, group: SymmetryGroup) -> Partition:
    """Partition the constants of ``sort`` in ``phi`` by pairwise swap tests.

    Two constants share a cell iff exchanging them maps ``phi`` to the same
    literal set. Independent-sort swaps carry the induced action on dependent
    sorts; dependent-sort constants are exchanged directly.
    """
    cells: list[list[int]] = []
    constants = occurring_constants(phi, sort, group)
    for c in constants:
        for cell in cells:
            if _swap(phi, sort, cell[0], c, group) == phi:
                cell.append(c)
                break
        else:
            cells.append([c])
    return Partition(sort, tuple(tuple(cell) for cell in cells), len(constants))


def logical_orbit(phi: GroundClause, group: SymmetryGroup) -> set[GroundClause]:
    """Distinct γ-images of ``phi`` over the whole group.

    Raises:
        SymmetryBudgetError: group order above the group's budget
    """
    return {group.apply(gamma, phi) for gamma in group.elements()}
