"""Explicit-state exploration of tiny instances, used as ground truth.

States are integers: bit ``i`` holds state variable ``i`` of the instance.
The reachable set is a dense numpy bitset over all ``2**V`` states.
"""

import logging
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np

from ..errors import OracleCapError
from ..ground.clause import GroundCube
from ..ground.formula import GAnd, GAtom, GConst, GFormula, GIff, GNot, gatoms
from ..ground.instance import FiniteInstance, GroundAction
from ..ground.semantics import evaluate_formula

logger = logging.getLogger(__name__)

MAX_ORACLE_VARS = 24


def encode(state: Sequence[bool]) -> int:
    return sum(1 << i for i, v in enumerate(state) if v)


def decode(code: int, width: int) -> list[bool]:
    return [bool((code >> i) & 1) for i in range(width)]


def _check_cap(inst: FiniteInstance) -> None:
    if inst.num_state_vars > MAX_ORACLE_VARS:
        raise OracleCapError(
            f"instance {inst.describe_sizes()} has {inst.num_state_vars} state variables; "
            f"the explicit oracle handles at most {MAX_ORACLE_VARS}"
        )


def _conjuncts(g: GFormula) -> tuple[GFormula, ...]:
    return g.args if isinstance(g, GAnd) else (g,)


def _current_only(g: GFormula) -> bool:
    return not any(a.primed for a in gatoms(g))


class _ActionStepper:
    """Successor computation for one ground action.

    Update conjuncts of the forms ``x'``, ``not x'`` and ``x' = e`` (``e``
    over the current state) are read as assignments. Updated variables left
    unassigned are enumerated, and every candidate successor is checked
    against the full update formula.
    """

    def __init__(self, inst: FiniteInstance, action: GroundAction):
        self.inst = inst
        self.action = action
        self.assignments: dict[int, GFormula] = {}
        for part in _conjuncts(action.update):
            match part:
                case GAtom(atom, True) if inst.is_state(atom):
                    self.assignments[inst.state_index[atom]] = GConst(True)
                case GNot(GAtom(atom, True)) if inst.is_state(atom):
                    self.assignments[inst.state_index[atom]] = GConst(False)
                case GIff(GAtom(atom, True), expr) if inst.is_state(atom) and _current_only(expr):
                    self.assignments[inst.state_index[atom]] = expr
                case GIff(expr, GAtom(atom, True)) if inst.is_state(atom) and _current_only(expr):
                    self.assignments[inst.state_index[atom]] = expr
        self.free = [i for i in action.updated if i not in self.assignments]

    def successors(self, state: list[bool]) -> Iterator[list[bool]]:
        inst = self.inst
        if not inst.evaluate(self.action.guard, state):
            return
        base = list(state)
        for i, expr in self.assignments.items():
            base[i] = inst.evaluate(expr, state)
        for values in product((False, True), repeat=len(self.free)):
            nxt = list(base)
            for i, v in zip(self.free, values, strict=True):
                nxt[i] = v
            if inst.evaluate(self.action.update, state, nxt) and inst.evaluate(inst.axioms, nxt):
                yield nxt


class StateSpace:
    """Reachable states of an instance.

    Attributes:
        inst: The instance
        reachable: Boolean array of length ``2**V``
        parents: BFS predecessor and action label of every reached non-initial state
    """

    def __init__(self, inst: FiniteInstance):
        _check_cap(inst)
        self.inst = inst
        self.width = inst.num_state_vars
        self.reachable = np.zeros(1 << self.width, dtype=bool)
        self.parents: dict[int, tuple[int, str]] = {}
        self._steppers = [_ActionStepper(inst, a) for a in inst.actions]

    @property
    def count(self) -> int:
        return int(self.reachable.sum())

    def contains(self, state: Sequence[bool]) -> bool:
        return bool(self.reachable[encode(state)])

    def states(self) -> Iterator[list[bool]]:
        for code in np.flatnonzero(self.reachable):
            yield decode(int(code), self.width)

    def successors(self, state: list[bool]) -> Iterator[tuple[str, list[bool]]]:
        for stepper in self._steppers:
            for nxt in stepper.successors(state):
                yield stepper.action.label, nxt

    def initial_states(self) -> Iterator[list[bool]]:
        """Every state satisfying the axioms and the initial condition.

        Literal conjuncts of the initial condition fix their variables; the
        rest are enumerated.
        """
        inst = self.inst
        fixed: dict[int, bool] = {}
        for part in _conjuncts(inst.init):
            match part:
                case GAtom(atom, False) if inst.is_state(atom):
                    fixed[inst.state_index[atom]] = True
                case GNot(GAtom(atom, False)) if inst.is_state(atom):
                    fixed[inst.state_index[atom]] = False
        free = [i for i in range(self.width) if i not in fixed]
        for values in product((False, True), repeat=len(free)):
            state = [False] * self.width
            for i, v in fixed.items():
                state[i] = v
            for i, v in zip(free, values, strict=True):
                state[i] = v
            if inst.evaluate(inst.init, state) and inst.evaluate(inst.axioms, state):
                yield state

    def all_states(self) -> Iterator[list[bool]]:
        """Every state satisfying the axioms."""
        for code in range(1 << self.width):
            state = decode(code, self.width)
            if self.inst.evaluate(self.inst.axioms, state):
                yield state

    def explore(self) -> "StateSpace":
        queue: deque[int] = deque()
        for state in self.initial_states():
            code = encode(state)
            if not self.reachable[code]:
                self.reachable[code] = True
                queue.append(code)
        while queue:
            code = queue.popleft()
            for label, nxt in self.successors(decode(code, self.width)):
                nxt_code = encode(nxt)
                if not self.reachable[nxt_code]:
                    self.reachable[nxt_code] = True
                    self.parents[nxt_code] = (code, label)
                    queue.append(nxt_code)
        logger.debug("explored %s: %d reachable states", self.inst.describe_sizes(), self.count)
        return self

    def path_to(self, state: Sequence[bool]) -> list[list[bool]]:
        """Shortest BFS path from an initial state to a reachable ``state``."""
        code = encode(state)
        if not self.reachable[code]:
            raise ValueError("state is not reachable")
        path = [code]
        while code in self.parents:
            code = self.parents[code][0]
            path.append(code)
        return [decode(c, self.width) for c in reversed(path)]

    def first_violation(self) -> list[list[bool]] | None:
        """Shortest path to a reachable state violating the safety property, if any."""
        best: list[list[bool]] | None = None
        for state in self.states():
            if not self.inst.evaluate(self.inst.safety, state):
                path = self.path_to(state)
                if best is None or len(path) < len(best):
                    best = path
        return best


def bfs_reach(inst: FiniteInstance) -> StateSpace:
    """Exact reachable set of ``inst`` by breadth-first search.

    Raises:
        OracleCapError: more than 24 state variables
    """
    return StateSpace(inst).explore()


@dataclass(frozen=True)
class ExplicitCheck:
    """Outcome of an exhaustive invariant check.

    Attributes:
        holds: Whether the invariant is initial, closed and safe
        reason: ``initiation``, ``consecution`` or ``safety`` when it fails
        state: Offending state
        successor: Successor leaving the invariant (consecution only)
    """

    holds: bool
    reason: str | None = None
    state: list[bool] | None = None
    successor: list[bool] | None = None


def check_invariant_explicit(inv: GFormula, inst: FiniteInstance) -> ExplicitCheck:
    """Decide by enumeration whether ``inv`` is an inductive invariant implying safety.

    Raises:
        OracleCapError: more than 24 state variables
    """
    space = StateSpace(inst)
    for state in space.initial_states():
        if not inst.evaluate(inv, state):
            return ExplicitCheck(False, "initiation", state)
    for state in space.all_states():
        if not inst.evaluate(inv, state):
            continue
        if not inst.evaluate(inst.safety, state):
            return ExplicitCheck(False, "safety", state)
        for _, nxt in space.successors(state):
            if not inst.evaluate(inv, nxt):
                return ExplicitCheck(False, "consecution", state, nxt)
    return ExplicitCheck(True)


@dataclass(frozen=True)
class ReplayResult:
    valid: bool
    broken_at: int | None = None
    reason: str | None = None


def _as_state(inst: FiniteInstance, step: GroundCube | Sequence[bool]) -> list[bool]:
    if isinstance(step, GroundCube):
        return inst.cube_state(step)
    return [bool(v) for v in step]


def replay(trace: Sequence[GroundCube | Sequence[bool]], inst: FiniteInstance) -> ReplayResult:
    """Check a counterexample by direct evaluation.

    The first state must be initial, each consecutive pair must be linked by
    some ground action, and the last state must violate safety. Initial
    condition, axioms and safety are read from the spec, not from their
    groundings.
    """
    if not trace:
        return ReplayResult(False, 0, "empty trace")
    try:
        states = [_as_state(inst, step) for step in trace]
    except ValueError as exc:
        return ReplayResult(False, 0, str(exc))
    spec = inst.spec
    initial = evaluate_formula(inst, spec.init, states[0]) and all(
        evaluate_formula(inst, axiom, states[0]) for axiom in spec.axioms
    )
    if not initial:
        return ReplayResult(False, 0, "first state is not initial")
    for k in range(1, len(states)):
        cur, nxt = states[k - 1], states[k]
        if not any(inst.evaluate(a.formula, cur, nxt) for a in inst.actions):
            return ReplayResult(False, k, f"no action leads from state {k - 1} to state {k}")
    if evaluate_formula(inst, spec.safety, states[-1]):
        return ReplayResult(False, len(states) - 1, "last state satisfies the safety property")
    return ReplayResult(True)
