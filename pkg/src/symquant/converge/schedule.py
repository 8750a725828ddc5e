"""Growing size assignments, one independent sort at a time."""

import logging
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from math import prod

from ..errors import ResourceLimitError
from ..ground.constants import SizeAssignment, sort_sizes, validate_sizes
from ..spec.ast import Exists, Forall, ProtocolSpec, walk

logger = logging.getLogger(__name__)


def state_var_count(spec: ProtocolSpec, sizes: SizeAssignment) -> int:
    """Ground state variables of ``spec`` at ``sizes``, without building the instance."""
    all_sizes = sort_sizes(spec, sizes)
    return sum(prod(all_sizes[s] for s in rel.arg_sorts) for rel in spec.state_relations)


def default_sizes(spec: ProtocolSpec) -> dict[str, int]:
    """Two constants per independent sort, one for a sort the safety property binds exactly once."""
    bound = Counter(
        sort
        for node in walk(spec.safety)
        if isinstance(node, Forall | Exists)
        for _, sort in node.bindings
    )
    return {sort.name: 1 if bound[sort.name] == 1 else 2 for sort in spec.independent_sorts}


@dataclass
class SizeSchedule:
    """Size assignments visited by a convergence run.

    Attributes:
        spec: The protocol
        current: Sizes of the instance being proven
        max_vars: Largest ground state-variable count allowed
        history: Every assignment visited, the base first
    """

    spec: ProtocolSpec
    current: dict[str, int]
    max_vars: int
    history: list[dict[str, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.current = dict(validate_sizes(self.spec, self.current))
        self.check_cap(self.current)
        if not self.history:
            self.history.append(dict(self.current))

    @property
    def base(self) -> dict[str, int]:
        return dict(self.history[0])

    def check_cap(self, sizes: Mapping[str, int]) -> None:
        count = state_var_count(self.spec, sizes)
        if count > self.max_vars:
            raise ResourceLimitError(
                f"instance {dict(sizes)} needs {count} state variables (cap {self.max_vars})"
            )

    def independent(self, sort: str) -> str:
        """``sort`` itself, or its base when it is a dependent sort."""
        decl = self.spec.sort(sort)
        return decl.base if decl.is_dependent and decl.base else sort

    def enlarged(self, sort: str) -> dict[str, int]:
        """Current sizes with one more constant of ``sort`` (or of its base)."""
        target = self.independent(sort)
        return {**self.current, target: self.current[target] + 1}

    def grow(self, sort: str) -> dict[str, int]:
        """Move to ``enlarged(sort)``.

        Raises:
            ResourceLimitError: the enlarged instance exceeds the cap
        """
        sizes = self.enlarged(sort)
        self.check_cap(sizes)
        self.current = sizes
        self.history.append(dict(sizes))
        logger.info("growing %s: sizes now %s", self.independent(sort), sizes)
        return dict(sizes)
