"""Unit tests for the antecedent and EPR reductions."""

from symquant.quantinfer import (
    AlternationGraph,
    FrameOracle,
    Polarity,
    QuantifiedPredicate,
    QuantifierBlock,
    antecedent_reduction,
    epr_reduction,
)
from symquant.spec import App, Not, Or, Var


class FixedOracle(FrameOracle):
    """Oracle with a fixed answer that records what it was asked."""

    def __init__(self, answer: bool):
        self.answer = answer
        self.asked: list[QuantifiedPredicate] = []

    def is_unreachable(self, pred: QuantifiedPredicate) -> bool:
        self.asked.append(pred)
        return self.answer


def forall_exists(first: tuple[str, str], second: tuple[str, str]) -> QuantifiedPredicate:
    body = App("vote", (Var(first[0]), Var(second[0])))
    if first[1] == "value":
        body = App("vote", (Var(second[0]), Var(first[0])))
    return QuantifiedPredicate(
        (
            QuantifierBlock(Polarity.UNIVERSAL, (first,)),
            QuantifierBlock(Polarity.EXISTENTIAL, (second,)),
        ),
        body,
    )


def two_decisions() -> QuantifiedPredicate:
    body = Or((Not(App("decision", (Var("V1"),))), Not(App("decision", (Var("V2"),)))))
    block = QuantifierBlock(
        Polarity.UNIVERSAL, (("V1", "value"), ("V2", "value")), (("V1", "V2"),)
    )
    return QuantifiedPredicate((block,), body)


class TestAlternationGraph:
    """Test sort alternation arcs and cycle detection."""

    def test_dependent_sorts_point_to_base(self, toy_spec) -> None:
        """Test the initial arc from quorums to nodes."""
        assert AlternationGraph(toy_spec).arcs == {("quorum", "node")}

    def test_arcs_of_forall_exists(self) -> None:
        """Test that a universal node before an existential value adds node -> value."""
        pred = forall_exists(("N", "node"), ("V", "value"))
        assert AlternationGraph.arcs_of(pred) == {("node", "value")}

    def test_cycle(self, toy_spec) -> None:
        """Test that alternating back closes a cycle."""
        graph = AlternationGraph(toy_spec)
        graph.add(forall_exists(("N", "node"), ("V", "value")))
        assert not graph.has_cycle()
        assert graph.has_cycle({("value", "node")})

    def test_self_loop(self, toy_spec) -> None:
        """Test that an arc from a sort to itself is a cycle."""
        assert AlternationGraph(toy_spec).has_cycle({("value", "value")})


class TestAntecedentReduction:
    """Test dropping distinct antecedents."""

    def test_accepted(self) -> None:
        """Test that an accepted candidate loses its distinct groups."""
        oracle = FixedOracle(True)
        reduced = antecedent_reduction(two_decisions(), oracle)
        assert reduced.distinct_groups == ()
        assert reduced.body == two_decisions().body
        assert len(oracle.asked) == 1

    def test_rejected(self) -> None:
        """Test that a rejected candidate leaves the predicate unchanged."""
        pred = two_decisions()
        assert antecedent_reduction(pred, FixedOracle(False)) == pred

    def test_nothing_to_drop(self) -> None:
        """Test that predicates without distinct groups are not sent to the oracle."""
        oracle = FixedOracle(True)
        pred = forall_exists(("N", "node"), ("V", "value"))
        assert antecedent_reduction(pred, oracle) == pred
        assert oracle.asked == []


class TestEprReduction:
    """Test moving existentials to the front."""

    def test_reorders_cycle_closing_predicate(self, toy_spec) -> None:
        """Test that a value -> node alternation becomes exists-node, forall-value."""
        graph = AlternationGraph(toy_spec)
        graph.add(forall_exists(("N", "node"), ("V", "value")))
        pred = forall_exists(("V", "value"), ("N", "node"))
        reduced = epr_reduction(pred, graph, FixedOracle(True))
        assert [b.polarity for b in reduced.prefix] == [Polarity.EXISTENTIAL, Polarity.UNIVERSAL]
        assert not graph.has_cycle(graph.arcs_of(reduced))

    def test_acyclic_predicate_untouched(self, toy_spec) -> None:
        """Test that a predicate keeping the graph acyclic is not reordered."""
        oracle = FixedOracle(True)
        pred = forall_exists(("N", "node"), ("V", "value"))
        assert epr_reduction(pred, AlternationGraph(toy_spec), oracle) == pred
        assert oracle.asked == []

    def test_rejected_by_oracle(self, toy_spec) -> None:
        """Test that the reordering is dropped when the oracle refuses it."""
        graph = AlternationGraph(toy_spec)
        graph.add(forall_exists(("N", "node"), ("V", "value")))
        pred = forall_exists(("V", "value"), ("N", "node"))
        assert epr_reduction(pred, graph, FixedOracle(False)) == pred
