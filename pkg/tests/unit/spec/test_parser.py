"""Unit tests for spec parsing, printing and typechecking."""

import pytest

from symquant.errors import SpecError, SpecSyntaxError
from symquant.spec import (
    App,
    Forall,
    Iff,
    RelationRole,
    SortKind,
    Var,
    load_spec,
    parse_certificate,
    parse_formula,
    parse_spec,
    print_spec,
    typecheck,
)

MINIMAL = """
(sort node)
(relation flag (node))
(init (forall ((N node)) (not (flag N))))
(action Set ((n node))
  :guard true
  :update ((flag (forall ((N node)) (= (flag' N) (or (flag N) (= N n)))))))
(safety true)
"""


class TestParseSpec:
    """Test reading spec documents."""

    def test_toy_consensus_declarations(self, toy_spec) -> None:
        """Test sorts, relations and actions of the bundled toy consensus."""
        assert [s.name for s in toy_spec.independent_sorts] == ["node", "value"]
        [quorum] = toy_spec.dependent_sorts
        assert quorum.name == "quorum"
        assert quorum.kind is SortKind.DEPENDENT
        assert quorum.base == "node"
        assert [r.name for r in toy_spec.state_relations] == ["vote", "decision"]
        assert [d.name for d in toy_spec.definitions] == ["didNotVote", "chosenAt"]
        assert [a.name for a in toy_spec.actions] == ["CastVote", "Decide"]

    def test_membership_relation_is_implicit(self, toy_spec) -> None:
        """Test that a dependent sort brings its membership relation."""
        roles = {r.name: r.role for r in toy_spec.relations}
        assert RelationRole.MEMBERSHIP in roles.values()

    def test_action_parameters_and_updates(self, toy_spec) -> None:
        """Test that parameters keep their sorts and updates name their relation."""
        cast = toy_spec.action("CastVote")
        assert cast.params == (("n", "node"), ("v", "value"))
        assert [rel for rel, _ in cast.updates] == ["vote"]
        assert isinstance(cast.updates[0][1], Forall)

    def test_unknown_action_raises_key_error(self, toy_spec) -> None:
        """Test that looking up an undeclared action fails."""
        with pytest.raises(KeyError):
            toy_spec.action("Nope")

    def test_missing_init_defaults_to_true(self) -> None:
        """Test that a document without init starts from every state."""
        spec = parse_spec("(sort node)\n(relation flag (node))\n(safety true)")
        assert spec.init == parse_formula("true", spec)

    def test_missing_safety(self) -> None:
        """Test that a safety property is mandatory."""
        with pytest.raises(SpecError, match="no safety property"):
            parse_spec("(sort node)")

    def test_unknown_identifier(self) -> None:
        """Test that an undeclared relation is rejected."""
        with pytest.raises(SpecError, match="unknown identifier foo"):
            parse_spec("(sort node)\n(safety (foo))")

    def test_duplicate_sort(self) -> None:
        """Test that a sort cannot be declared twice."""
        with pytest.raises(SpecError, match="duplicate declaration of sort node"):
            parse_spec("(sort node)\n(sort node)\n(safety true)")

    def test_unbalanced_parentheses_report_position(self) -> None:
        """Test that syntax errors carry a line and column."""
        with pytest.raises(SpecSyntaxError) as info:
            parse_spec("(sort node)\n(safety (and true true)")
        assert info.value.line >= 1
        assert info.value.column >= 1
        assert "line" in str(info.value)

    def test_comments_are_ignored(self) -> None:
        """Test that ; comments may appear anywhere."""
        spec = parse_spec("; header\n(sort node) ; trailing\n(safety true)")
        assert [s.name for s in spec.sorts] == ["node"]


class TestFormulas:
    """Test parsing single formulas and certificates."""

    def test_primed_application(self, toy_spec) -> None:
        """Test that a trailing quote marks the next state."""
        f = parse_formula("(= (decision' v) (decision v))", toy_spec, {"v": "value"})
        assert isinstance(f, Iff)
        assert f.left == App("decision", (Var("v"),), primed=True)
        assert f.right == App("decision", (Var("v"),))

    def test_certificate_skips_comments(self, toy_spec) -> None:
        """Test that the certificate header is not read as an assertion."""
        text = (
            "; benchmark: toy_consensus\n"
            "; strengthening assertions: 2\n"
            "(forall ((N node) (V value)) (or (not (vote N V)) (vote N V)))\n"
            "(forall ((V value)) (not (decision V)))\n"
        )
        formulas = parse_certificate(text, toy_spec)
        assert len(formulas) == 2
        assert all(isinstance(f, Forall) for f in formulas)


class TestPrintSpec:
    """Test rendering specs back to text."""

    def test_round_trip(self, toy_spec) -> None:
        """Test that printing and reparsing gives the same protocol."""
        assert parse_spec(print_spec(toy_spec)) == toy_spec

    def test_round_trip_minimal(self) -> None:
        """Test the round trip on a protocol without dependent sorts."""
        spec = load_spec(MINIMAL)
        assert parse_spec(print_spec(spec)) == spec


class TestTypecheck:
    """Test semantic checks."""

    def test_bundled_spec_is_clean(self, toy_spec) -> None:
        """Test that the bundled toy consensus has no diagnostics."""
        assert typecheck(toy_spec) == []

    def test_arity_mismatch(self) -> None:
        """Test that applying a relation to too many arguments is reported."""
        spec = parse_spec(
            "(sort node)\n(relation flag (node))\n"
            "(safety (forall ((N node)) (flag N N)))"
        )
        assert any("flag expects 1 argument(s), got 2" in d for d in typecheck(spec))

    def test_prime_outside_update(self) -> None:
        """Test that the safety property cannot mention the next state."""
        spec = parse_spec(
            "(sort node)\n(relation flag (node))\n"
            "(safety (forall ((N node)) (flag' N)))"
        )
        assert any("primed application flag' not allowed here" in d for d in typecheck(spec))

    def test_load_spec_joins_diagnostics(self) -> None:
        """Test that load_spec raises on an ill-typed protocol."""
        text = (
            "(sort node)\n(sort value)\n(relation flag (node))\n"
            "(safety (forall ((V value)) (flag V)))"
        )
        with pytest.raises(SpecError, match="has sort value, expected node"):
            load_spec(text)
