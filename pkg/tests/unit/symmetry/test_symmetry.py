"""Unit tests for permutations, orbits and partitions."""

import random

import pytest

from symquant.errors import SymmetryBudgetError
from symquant.ground import Atom, GroundClause, Literal
from symquant.symmetry import Permutation, SymmetryGroup, logical_orbit, partition


def lit(symbol: str, *args: int, positive: bool = True) -> Literal:
    return Literal(Atom(symbol, args), positive)


class TestPermutation:
    """Test the Permutation value type."""

    def test_not_a_bijection(self) -> None:
        """Test that repeated images are rejected."""
        with pytest.raises(ValueError, match="not a bijection"):
            Permutation.from_mapping({"node": [0, 0, 1]})

    def test_compose_with_inverse(self) -> None:
        """Test that a permutation composed with its inverse is the identity."""
        p = Permutation.from_mapping({"node": [2, 0, 1], "value": [1, 0]})
        assert p.compose(p.inverse()).is_identity()
        assert p.image("node", 0) == 2

    def test_transposition(self) -> None:
        """Test that a transposition swaps exactly two constants."""
        t = Permutation.transposition({"node": 3}, "node", 0, 2)
        assert t.as_dict()["node"] == (2, 1, 0)


class TestSymmetryGroup:
    """Test the implicit product of symmetric groups."""

    def test_order(self, toy_3x3) -> None:
        """Test that the order is 3! * 3! for toy consensus at (3, 3)."""
        group = SymmetryGroup(toy_3x3)
        assert group.order == 36
        assert sum(1 for _ in group.elements()) == 36

    def test_identity_first(self, toy_3x3) -> None:
        """Test that enumeration starts with the identity."""
        assert next(SymmetryGroup(toy_3x3).elements()).is_identity()

    def test_budget(self, toy_3x3) -> None:
        """Test that enumerating a group above the budget fails."""
        group = SymmetryGroup(toy_3x3, max_order=10)
        with pytest.raises(SymmetryBudgetError, match="order 36"):
            list(group.elements())

    def test_induced_action_on_quorums(self, toy_3x3) -> None:
        """Test that swapping nodes 1 and 3 moves quorum {1,2} to {2,3}."""
        group = SymmetryGroup(toy_3x3)
        maps = group.sort_maps(group.transposition("node", 0, 2))
        assert maps["quorum"] == (2, 1, 0)

    def test_apply_state_preserves_reachability_shape(self, toy_3x3) -> None:
        """Test that permuting a state moves each true atom to its image."""
        group = SymmetryGroup(toy_3x3)
        state = [False] * toy_3x3.num_state_vars
        state[toy_3x3.state_index[Atom("vote", (0, 1))]] = True
        gamma = Permutation.from_mapping({"node": [1, 0, 2], "value": [0, 2, 1]})
        image = group.apply_state(gamma, state)
        assert image[toy_3x3.state_index[Atom("vote", (1, 2))]]
        assert sum(image) == 1

    def test_random_element_is_member(self, toy_3x3) -> None:
        """Test that sampled elements are valid permutations of each sort."""
        group = SymmetryGroup(toy_3x3)
        gamma = group.random_element(random.Random(7))
        assert sorted(gamma.as_dict()["node"]) == [0, 1, 2]
        assert sorted(gamma.as_dict()["value"]) == [0, 1, 2]


class TestOrbits:
    """Test logical orbits and constant partitions."""

    def test_orbit_of_two_decisions(self, toy_3x3) -> None:
        """Test that the orbit of "not both v1 and v2 decided" has one clause per value pair."""
        group = SymmetryGroup(toy_3x3)
        phi = GroundClause([lit("decision", 0, positive=False), lit("decision", 1, positive=False)])
        orbit = logical_orbit(phi, group)
        assert len(orbit) == 3
        assert phi in orbit

    def test_orbit_of_vote_clause(self, toy_3x3) -> None:
        """Test that a clause over one node and two values has one image per node and value pair."""
        group = SymmetryGroup(toy_3x3)
        phi = GroundClause([lit("vote", 0, 0, positive=False), lit("vote", 0, 1, positive=False)])
        assert len(logical_orbit(phi, group)) == 9

    def test_partition_single_cell(self, toy_3x3) -> None:
        """Test that interchangeable constants share a cell."""
        group = SymmetryGroup(toy_3x3)
        phi = GroundClause([lit("decision", 0, positive=False), lit("decision", 1, positive=False)])
        part = partition(phi, "value", group)
        assert part.cells == ((0, 1),)
        assert part.count == 2
        assert part.is_unit

    def test_partition_distinguished_constants(self, toy_3x3) -> None:
        """Test that constants in different roles get their own cells."""
        group = SymmetryGroup(toy_3x3)
        phi = GroundClause([lit("vote", 0, 0), lit("decision", 1, positive=False)])
        part = partition(phi, "value", group)
        assert part.cells == ((0,), (1,))
        assert part.singletons == ((0,), (1,))
        assert part.big_cells == ()

    def test_partition_of_absent_sort(self, toy_3x3) -> None:
        """Test that a sort not occurring in the clause has an empty partition."""
        group = SymmetryGroup(toy_3x3)
        phi = GroundClause([lit("decision", 0)])
        part = partition(phi, "node", group)
        assert part.count == 0
        assert part.cells == ()
