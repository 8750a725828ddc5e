"""Permutations of sort constants and the symmetry group of a finite instance."""

import logging
import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial, prod

from ..config import DEFAULT_MAX_GROUP_ORDER
from ..errors import SymmetryBudgetError
from ..ground.clause import Atom, GroundClause, GroundCube, Literal
from ..ground.instance import FiniteInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Permutation:
    """A bijection on the constant indices of every independent sort.

    ``images`` holds, per sort, the tuple ``p`` with ``p[i]`` the image of
    constant ``i``. Sorts not listed are fixed.
    """

    images: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        for sort, image in self.images:
            if sorted(image) != list(range(len(image))):
                raise ValueError(f"not a bijection on sort {sort}: {image}")

    @classmethod
    def from_mapping(cls, images: Mapping[str, Sequence[int]]) -> "Permutation":
        return cls(tuple((sort, tuple(images[sort])) for sort in sorted(images)))

    @classmethod
    def identity(cls, sizes: Mapping[str, int]) -> "Permutation":
        return cls.from_mapping({sort: range(n) for sort, n in sizes.items()})

    @classmethod
    def transposition(
        cls, sizes: Mapping[str, int], sort: str, i: int, j: int
    ) -> "Permutation":
        images = {s: list(range(n)) for s, n in sizes.items()}
        images[sort][i], images[sort][j] = j, i
        return cls.from_mapping(images)

    def as_dict(self) -> dict[str, tuple[int, ...]]:
        return dict(self.images)

    def image(self, sort: str, index: int) -> int:
        mapping = self.as_dict().get(sort)
        return index if mapping is None else mapping[index]

    def compose(self, first: "Permutation") -> "Permutation":
        """``self ∘ first``: apply ``first``, then ``self``."""
        mine, theirs = self.as_dict(), first.as_dict()
        result = {}
        for sort in set(mine) | set(theirs):
            outer = mine.get(sort)
            inner = theirs.get(sort)
            size = len(outer if outer is not None else inner)  # type: ignore[arg-type]
            result[sort] = [
                (outer[k] if outer is not None else k)
                for k in ((inner[i] if inner is not None else i) for i in range(size))
            ]
        return Permutation.from_mapping(result)

    def inverse(self) -> "Permutation":
        result = {}
        for sort, image in self.images:
            inv = [0] * len(image)
            for i, j in enumerate(image):
                inv[j] = i
            result[sort] = inv
        return Permutation.from_mapping(result)

    def is_identity(self) -> bool:
        return all(image == tuple(range(len(image))) for _, image in self.images)


class SymmetryGroup:
    """Product of the full symmetric groups of the independent sorts of an instance.

    The group is implicit; elements are enumerated on demand. Dependent-sort
    constants move by the induced action: permute the member set, then look
    the result up in the constant table.

    Args:
        inst: The finite instance
        max_order: Largest order that ``elements`` will enumerate
    """

    def __init__(self, inst: FiniteInstance, max_order: int = DEFAULT_MAX_GROUP_ORDER):
        self.inst = inst
        self.sizes = dict(inst.sizes)
        self.max_order = max_order
        self._by_members = {
            sort.name: {c.members: c.index for c in inst.constants[sort.name]}
            for sort in inst.spec.dependent_sorts
        }
        self._bases = {sort.name: sort.base for sort in inst.spec.dependent_sorts}

    @property
    def order(self) -> int:
        return prod(factorial(n) for n in self.sizes.values())

    def check_budget(self) -> None:
        if self.order > self.max_order:
            raise SymmetryBudgetError(
                f"symmetry group of order {self.order} exceeds the enumeration budget "
                f"{self.max_order}"
            )

    def elements(self) -> Iterator[Permutation]:
        """Every group element, identity first.

        Raises:
            SymmetryBudgetError: order above ``max_order``
        """
        self.check_budget()
        sorts = list(self.sizes)
        for combo in product(*(permutations(range(self.sizes[s])) for s in sorts)):
            yield Permutation(tuple(zip(sorts, combo, strict=True)))

    def identity(self) -> Permutation:
        return Permutation.identity(self.sizes)

    def transposition(self, sort: str, i: int, j: int) -> Permutation:
        return Permutation.transposition(self.sizes, sort, i, j)

    def random_element(self, rng: random.Random) -> Permutation:
        images = {}
        for sort, n in self.sizes.items():
            image = list(range(n))
            rng.shuffle(image)
            images[sort] = image
        return Permutation.from_mapping(images)

    def sort_maps(self, gamma: Permutation) -> dict[str, tuple[int, ...]]:
        """Index maps of ``gamma`` for every sort, dependent ones induced."""
        maps = {sort: gamma.as_dict().get(sort, tuple(range(n))) for sort, n in self.sizes.items()}
        for dep, base in self._bases.items():
            base_map = maps[base]
            maps[dep] = tuple(
                self._by_members[dep][tuple(sorted(base_map[m] for m in c.members))]
                for c in self.inst.constants[dep]
            )
        return maps

    def _map_atom(self, atom: Atom, maps: Mapping[str, Sequence[int]]) -> Atom:
        sorts = self.inst.signature(atom.symbol)
        return Atom(atom.symbol, tuple(maps[s][i] for s, i in zip(sorts, atom.args, strict=True)))

    def map_literals(
        self, literals: Iterable[Literal], maps: Mapping[str, Sequence[int]]
    ) -> list[Literal]:
        return [Literal(self._map_atom(lit.atom, maps), lit.positive) for lit in literals]

    def apply(self, gamma: Permutation, phi: GroundClause) -> GroundClause:
        """The γ-image of a clause."""
        return GroundClause(self.map_literals(phi, self.sort_maps(gamma)))

    def apply_cube(self, gamma: Permutation, cube: GroundCube) -> GroundCube:
        return GroundCube(self.map_literals(cube, self.sort_maps(gamma)))

    def apply_state(self, gamma: Permutation, state: Sequence[bool]) -> list[bool]:
        """The state whose atom ``γ(a)`` has the value atom ``a`` has in ``state``."""
        maps = self.sort_maps(gamma)
        result = [False] * len(state)
        for i, atom in enumerate(self.inst.state_atoms):
            result[self.inst.state_index[self._map_atom(atom, maps)]] = state[i]
        return result

    def swap_dependent(self, phi: GroundClause, sort: str, i: int, j: int) -> GroundClause:
        """Exchange two constants of a dependent sort, leaving every other sort fixed."""
        maps: dict[str, list[int] | tuple[int, ...]] = {
            s: tuple(range(n)) for s, n in self.inst.sort_sizes.items()
        }
        swapped = list(range(self.inst.size(sort)))
        swapped[i], swapped[j] = j, i
        maps[sort] = swapped
        return GroundClause(self.map_literals(phi, maps))


def apply(gamma: Permutation, phi: GroundClause, group: SymmetryGroup) -> GroundClause:
    return group.apply(gamma, phi)
