"""Randomized equivalence of inferred predicates with the orbits they generalize."""

import random

import pytest

from symquant.ground import clause_formula, mk_and
from symquant.quantinfer import expand, sym_boost
from symquant.symmetry import SymmetryGroup, logical_orbit


@pytest.mark.slow
class TestRandomClauses:
    """Test expand(sym_boost(phi)) against the conjunction of phi's orbit."""

    def test_five_hundred_clauses(self, small_instance, random_clause, random_state) -> None:
        """Test 500 random clauses per benchmark on sampled states, with zero mismatches."""
        inst = small_instance
        group = SymmetryGroup(inst)
        rng = random.Random(2024)
        states = [[False] * inst.num_state_vars, [True] * inst.num_state_vars]
        states += [random_state(inst, rng) for _ in range(30)]
        mismatches = []
        for _ in range(500):
            phi = random_clause(inst, rng)
            pred = sym_boost(phi, inst, group)
            expanded = expand(pred, inst)
            orbit = mk_and(clause_formula(c) for c in logical_orbit(phi, group))
            for state in states:
                if inst.evaluate(expanded, state) != inst.evaluate(orbit, state):
                    mismatches.append((phi, pred.text()))
                    break
        assert mismatches == []

    def test_orbit_clauses_falsify_the_predicate(self, toy_3x3, random_clause) -> None:
        """Test that a state falsifying any orbit clause falsifies the predicate."""
        group = SymmetryGroup(toy_3x3)
        rng = random.Random(9)
        for _ in range(50):
            phi = random_clause(toy_3x3, rng)
            pred = sym_boost(phi, toy_3x3, group)
            expanded = expand(pred, toy_3x3)
            for clause in logical_orbit(phi, group):
                falsifying = [rng.random() < 0.5 for _ in range(toy_3x3.num_state_vars)]
                for lit in clause:
                    falsifying[toy_3x3.state_index[lit.atom]] = not lit.positive
                assert not toy_3x3.evaluate(expanded, falsifying)
