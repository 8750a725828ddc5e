"""Optional strengthenings of learned predicates: antecedent and EPR reductions."""

import logging
from abc import ABC, abstractmethod
from collections.abc import Iterable
from dataclasses import replace

from ..spec.ast import ProtocolSpec
from .predicate import Polarity, QuantifiedPredicate, QuantifierBlock

logger = logging.getLogger(__name__)

Arc = tuple[str, str]


class FrameOracle(ABC):
    """Decides whether a candidate predicate may replace the one being learned."""

    @abstractmethod
    def is_unreachable(self, pred: QuantifiedPredicate) -> bool:
        """True when ``pred`` holds initially and after one step from the previous frame."""


def antecedent_reduction(pred: QuantifiedPredicate, oracle: FrameOracle) -> QuantifiedPredicate:
    """Drop the distinct antecedent when the stronger predicate is still unreachable."""
    if not pred.distinct_groups:
        return pred
    prefix = tuple(
        QuantifierBlock(b.polarity, b.variables) if b.distinct else b for b in pred.prefix
    )
    candidate = pred.with_prefix(prefix)
    if oracle.is_unreachable(candidate):
        logger.debug("antecedent dropped: %s", candidate)
        return candidate
    return pred


class AlternationGraph:
    """Sort graph with an arc ``a -> b`` whenever some ``b`` variable is chosen after an ``a``.

    Dependent sorts start with an arc to their base sort. Learned predicates
    add arcs for every universal-then-existential pair, and for every
    existential-then-universal pair (the negation of the predicate flips them).
    """

    def __init__(self, spec: ProtocolSpec):
        self.arcs: set[Arc] = {(s.name, s.base) for s in spec.dependent_sorts if s.base}

    @staticmethod
    def arcs_of(pred: QuantifiedPredicate) -> set[Arc]:
        arcs: set[Arc] = set()
        seen: dict[Polarity, set[str]] = {p: set() for p in Polarity}
        for block in pred.prefix:
            other = (
                Polarity.EXISTENTIAL if block.polarity is Polarity.UNIVERSAL else Polarity.UNIVERSAL
            )
            for _, sort in block.variables:
                arcs.update((before, sort) for before in seen[other])
            seen[block.polarity].update(sort for _, sort in block.variables)
        return arcs

    def add(self, pred: QuantifiedPredicate) -> None:
        self.arcs |= self.arcs_of(pred)

    def has_cycle(self, extra: Iterable[Arc] = ()) -> bool:
        """Whether the graph, with ``extra`` arcs added, has a cycle (self-loops count)."""
        succ: dict[str, set[str]] = {}
        for a, b in (*self.arcs, *extra):
            succ.setdefault(a, set()).add(b)
        state: dict[str, int] = {}

        def visit(node: str) -> bool:
            state[node] = 1
            for nxt in succ.get(node, ()):
                mark = state.get(nxt, 0)
                if mark == 1 or (mark == 0 and visit(nxt)):
                    return True
            state[node] = 2
            return False

        return any(state.get(n, 0) == 0 and visit(n) for n in list(succ))


def _existentials_first(pred: QuantifiedPredicate) -> QuantifiedPredicate:
    first = tuple(b for b in pred.prefix if b.polarity is Polarity.EXISTENTIAL)
    rest = tuple(b for b in pred.prefix if b.polarity is Polarity.UNIVERSAL)
    return replace(pred, prefix=first + rest)


def epr_reduction(
    pred: QuantifiedPredicate, graph: AlternationGraph, oracle: FrameOracle
) -> QuantifiedPredicate:
    """Move existentials to the front when that keeps the alternation graph acyclic.

    Only tried when ``pred`` as learned would close a cycle. A predicate
    that already keeps the graph acyclic is returned as is, even when an
    existentials-first form would also be unreachable. The reordered
    predicate is stronger and is kept only if the oracle accepts it.
    """
    if not pred.universals or not pred.existentials:
        return pred
    if not graph.has_cycle(graph.arcs_of(pred)):
        return pred
    candidate = _existentials_first(pred)
    if graph.has_cycle(graph.arcs_of(candidate)):
        return pred
    if oracle.is_unreachable(candidate):
        logger.debug("quantifiers reordered: %s", candidate)
        return candidate
    return pred
