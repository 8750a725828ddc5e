"""Unit tests comparing grounded formulas with direct evaluation of the spec."""

import random
from itertools import product

from symquant.ground import evaluate_formula


class TestGroundingAgreement:
    """Test that grounding then evaluating equals evaluating the spec formula."""

    def test_init_safety_axioms(self, small_instance, random_state) -> None:
        """Test the initial condition, safety property and axioms on random states."""
        spec = small_instance.spec
        rng = random.Random(1)
        formulas = [spec.init, spec.safety, *spec.axioms]
        for _ in range(30):
            state = random_state(small_instance, rng)
            for f in formulas:
                grounded = small_instance.ground(f)
                assert small_instance.evaluate(grounded, state) == evaluate_formula(
                    small_instance, f, state
                )

    def test_initial_state_agrees(self, small_instance) -> None:
        """Test the all-false state, which satisfies most initial conditions."""
        state = [False] * small_instance.num_state_vars
        spec = small_instance.spec
        assert small_instance.evaluate(small_instance.ground(spec.init), state) == (
            evaluate_formula(small_instance, spec.init, state)
        )

    def test_actions(self, small_instance, random_state) -> None:
        """Test every guard and update under every parameter assignment."""
        inst = small_instance
        rng = random.Random(2)
        for _ in range(5):
            current, nxt = random_state(inst, rng), random_state(inst, rng)
            for action in inst.spec.actions:
                names = [var for var, _ in action.params]
                tables = [inst.constants[sort] for _, sort in action.params]
                for combo in product(*tables):
                    env = dict(zip(names, combo, strict=True))
                    assert inst.evaluate(inst.ground(action.guard, env=env), current) == (
                        evaluate_formula(inst, action.guard, current, env=env)
                    )
                    for _, update in action.updates:
                        assert inst.evaluate(
                            inst.ground(update, env=env), current, nxt
                        ) == evaluate_formula(inst, update, current, nxt, env)
