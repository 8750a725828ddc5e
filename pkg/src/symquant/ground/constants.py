"""Constant tables of finite instances."""

from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
from math import comb

from ..errors import InstanceError
from ..spec.ast import ProtocolSpec

SizeAssignment = Mapping[str, int]


@dataclass(frozen=True, order=True)
class Constant:
    """One element of a sort in a finite instance.

    Attributes:
        sort: Sort name
        index: 0-based position in the sort's constant table
        name: Canonical name (``node_1``; majority constants ``quorum_1_2``)
        members: For dependent-sort constants, the 0-based base-sort indices of its members
    """

    sort: str
    index: int
    name: str
    members: tuple[int, ...] = ()


def majority_subsets(n: int) -> list[tuple[int, ...]]:
    """All subsets of ``range(n)`` of size ``n // 2 + 1``, in lexicographic order."""
    return list(combinations(range(n), n // 2 + 1))


def majority_count(n: int) -> int:
    return comb(n, n // 2 + 1)


def majority_name(sort: str, members: tuple[int, ...]) -> str:
    return sort + "_" + "_".join(str(i + 1) for i in members)


def validate_sizes(spec: ProtocolSpec, sizes: SizeAssignment) -> dict[str, int]:
    """Check that ``sizes`` assigns a positive size to exactly the independent sorts.

    Returns:
        The sizes as a plain dict, in sort declaration order
    """
    independent = [s.name for s in spec.independent_sorts]
    extra = sorted(set(sizes) - set(independent))
    if extra:
        raise InstanceError(f"sizes given for non-independent or unknown sorts: {', '.join(extra)}")
    result = {}
    for name in independent:
        if name not in sizes:
            raise InstanceError(f"no size given for sort {name}")
        size = sizes[name]
        if not isinstance(size, int) or size < 1:
            raise InstanceError(f"size of sort {name} must be a positive integer, got {size}")
        result[name] = size
    return result


def sort_sizes(spec: ProtocolSpec, sizes: SizeAssignment) -> dict[str, int]:
    """Sizes of every sort, dependent ones derived from their base."""
    result = dict(sizes)
    for sort in spec.dependent_sorts:
        result[sort.name] = majority_count(sizes[sort.base])
    return result


def build_constant_table(
    spec: ProtocolSpec, sizes: SizeAssignment
) -> dict[str, tuple[Constant, ...]]:
    """Deterministic constants for every sort of ``spec`` at ``sizes``."""
    table: dict[str, tuple[Constant, ...]] = {}
    for sort in spec.sorts:
        if sort.is_dependent:
            subsets = majority_subsets(sizes[sort.base])
            table[sort.name] = tuple(
                Constant(sort.name, i, majority_name(sort.name, members), members)
                for i, members in enumerate(subsets)
            )
        else:
            table[sort.name] = tuple(
                Constant(sort.name, i, f"{sort.name}_{i + 1}") for i in range(sizes[sort.name])
            )
    return table
