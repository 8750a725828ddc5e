"""Frames, counterexample traces and invariants produced by the induction engine."""

from collections.abc import Iterator
from dataclasses import dataclass, field

from ..checks.base import Candidate
from ..ground.clause import GroundCube
from ..ground.formula import GFormula
from ..ground.instance import FiniteInstance
from ..quantinfer.predicate import QuantifiedPredicate, expand


@dataclass
class Frame:
    """Predicates whose highest frame is ``index``.

    Frames are delta-encoded: ``F_i`` is the safety property together with
    the predicates of every frame ``j >= i``; ``F_0`` is the initial
    condition alone.
    """

    index: int
    learned: list[QuantifiedPredicate] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.learned)

    def __iter__(self) -> Iterator[QuantifiedPredicate]:
        return iter(self.learned)

    @property
    def level(self) -> str:
        """Activation literal guarding this frame's expansions in the solver."""
        return f"lvl{self.index}"


@dataclass
class EngineStats:
    frames: int = 0
    ctis: int = 0
    obligations: int = 0
    learned: int = 0
    reused: int = 0
    smt_queries: int = 0
    smt_seconds: float = 0.0
    wall_seconds: float = 0.0
    non_compact: int = 0
    pruned: int = 0


@dataclass(frozen=True)
class TraceCex:
    """A path from an initial state to a state violating the safety property.

    Attributes:
        states: Total states, each a cube over every state variable
        sizes: Sizes of the instance the trace lives in
    """

    states: tuple[GroundCube, ...]
    sizes: dict[str, int]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("a counterexample needs at least one state")

    def __len__(self) -> int:
        return len(self.states)

    def true_atoms(self, inst: FiniteInstance) -> list[list[str]]:
        """Per state, the names of the state atoms that are true."""
        return [
            sorted(inst.atom_name(lit.atom) for lit in cube if lit.positive and inst.is_state(lit.atom))
            for cube in self.states
        ]


@dataclass(frozen=True)
class InductiveInvariant:
    """``P`` strengthened by quantified predicates, inductive at ``sizes``.

    Attributes:
        strengthening: Learned predicates conjoined with the safety property
        sizes: Sizes of the instance the invariant was proven at
        frame: Index of the frame that became empty
        stats: Engine statistics of the run that produced it
    """

    strengthening: tuple[QuantifiedPredicate, ...]
    sizes: dict[str, int]
    frame: int = 0
    stats: EngineStats = field(default_factory=EngineStats, compare=False)

    @property
    def compact(self) -> bool:
        return all(p.compact for p in self.strengthening)

    def expansions(self, inst: FiniteInstance) -> list[GFormula]:
        return [expand(p, inst) for p in self.strengthening]

    def candidate(self, inst: FiniteInstance) -> Candidate:
        """The invariant grounded in ``inst``, ready for the ground checks."""
        names = [p.text() for p in self.strengthening]
        return Candidate.build(inst.safety, self.expansions(inst), names)
