"""Incremental induction with symmetry-boosted quantified learning.

The loop is standard IC3: block counterexamples to induction at the top
frame, open a new frame, push predicates forward, stop when a frame
empties. Each blocked cube is minimized, negated to a clause, and the
clause is generalized to a quantified predicate covering its whole orbit
under the symmetry group before it is learned.
"""

import heapq
import logging
import random
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import count

from ..checks import check_invariant
from ..config import RunConfig
from ..errors import EngineError, ResourceLimitError
from ..ground.clause import GroundClause, GroundCube, Literal
from ..ground.formula import (
    GAnd,
    GAtom,
    GFormula,
    GNot,
    clause_formula,
    cube_formula,
    literal_formula,
    mk_and,
    mk_not,
    prime,
)
from ..ground.instance import FiniteInstance
from ..quantinfer import (
    AlternationGraph,
    FrameOracle,
    QuantifiedPredicate,
    antecedent_reduction,
    epr_reduction,
    expand,
    sym_boost,
)
from ..solver import TRANS, SolverSession, minimal_unsat_core, open_session
from ..symmetry.permutation import SymmetryGroup
from .frames import EngineStats, Frame, InductiveInvariant, TraceCex

logger = logging.getLogger(__name__)

INIT = "init"
PROP = "prop"


@dataclass
class _Obligation:
    cube: GroundCube
    level: int
    parent: "_Obligation | None" = None


class _LevelOracle(FrameOracle):
    """Accepts a predicate that holds initially and one step after frame ``level - 1``."""

    def __init__(self, engine: "SymIC3", level: int):
        self.engine = engine
        self.level = level

    def is_unreachable(self, pred: QuantifiedPredicate) -> bool:
        return self.engine.holds_relatively(expand(pred, self.engine.inst), self.level)


class SymIC3:
    """IC3 over one finite instance with quantified, symmetry-closed frames.

    Args:
        inst: The instance to prove
        config: Budgets, solver and feature flags
        session: An open solver session on ``inst``; one is opened (and
            closed again) when omitted
    """

    def __init__(
        self,
        inst: FiniteInstance,
        config: RunConfig | None = None,
        session: SolverSession | None = None,
    ):
        self.inst = inst
        self.config = config or RunConfig()
        self.session = session
        self.group = SymmetryGroup(inst, self.config.max_group_order)
        self.graph = AlternationGraph(inst.spec)
        self.frames: list[Frame] = []
        self.stats = EngineStats()
        self._rng = random.Random(self.config.solver_seed)
        self._seq = count()
        self._init_state = self._total_init_state()
        self._started = 0.0

    # Frame plumbing

    @property
    def top(self) -> int:
        return len(self.frames) - 1

    def active(self, i: int) -> list[str]:
        """Activation literals selecting ``F_i``."""
        if i == 0:
            return [INIT]
        return [PROP, *(self.frames[j].level for j in range(i, len(self.frames)))]

    def _new_frame(self) -> None:
        frame = Frame(len(self.frames))
        self.frames.append(frame)
        self.session.declare_level(frame.level)  # type: ignore[union-attr]
        self.stats.frames = self.top

    def _learn(self, pred: QuantifiedPredicate, level: int) -> None:
        """Add ``pred`` to frame ``level``, so it holds in ``F_1 .. F_level``."""
        self.frames[level].learned.append(pred)
        self.session.assert_guarded(self.frames[level].level, expand(pred, self.inst))  # type: ignore[union-attr]
        self.graph.add(pred)
        self.stats.learned += 1
        if not pred.compact:
            self.stats.non_compact += 1
        logger.debug("learned at frame %d: %s", level, pred)

    # Queries

    def holds_relatively(self, g: GFormula, level: int) -> bool:
        """``Init ⇒ g`` and ``F_{level-1} ∧ T ⇒ g'``."""
        session = self.session
        assert session is not None
        if not session.is_unsat({"init": self.inst.init, "goal": mk_not(g)}, kind="initiation"):
            return False
        return session.is_unsat(
            {"goal": mk_not(prime(g))}, [TRANS, *self.active(level - 1)], kind="relative"
        )

    def _model_cube(self, state: Sequence[bool]) -> GroundCube:
        """Cube of a total state, enriched with the auxiliary definition values."""
        cube = self.inst.state_as_cube(list(state))
        return GroundCube([*cube, *self.inst.definition_literals(state)])

    def _total_init_state(self) -> list[bool] | None:
        """The unique initial state when the initial condition is a full cube."""
        parts = self.inst.init.args if isinstance(self.inst.init, GAnd) else (self.inst.init,)
        values: dict[int, bool] = {}
        for part in parts:
            match part:
                case GAtom(atom, False) if self.inst.is_state(atom):
                    values[self.inst.state_index[atom]] = True
                case GNot(GAtom(atom, False)) if self.inst.is_state(atom):
                    values[self.inst.state_index[atom]] = False
                case _:
                    return None
        if len(values) != self.inst.num_state_vars:
            return None
        return [values[i] for i in range(self.inst.num_state_vars)]

    def excludes_init(self, cube: GroundCube) -> bool:
        """Whether no initial state satisfies ``cube``."""
        if self._init_state is not None:
            state = self._init_state
            return not all(self.inst.evaluate(literal_formula(lit), state) for lit in cube)
        assert self.session is not None
        query = {"init": self.inst.init, "cube": cube_formula(cube)}
        return self.session.is_unsat(query, kind="initiation")

    def _literal_order(self, lit: Literal) -> tuple[int, tuple[int, tuple[int, ...], bool]]:
        return (0 if self.inst.is_state(lit.atom) else 1, self.inst.literal_key(lit))

    # Budgets

    def _check_budgets(self) -> None:
        if self.top > self.config.max_frames:
            raise ResourceLimitError(f"frame budget of {self.config.max_frames} exhausted")
        if self.stats.ctis > self.config.max_ctis:
            raise ResourceLimitError(f"CTI budget of {self.config.max_ctis} exhausted")
        assert self.session is not None
        if self.session.stats.seconds > self.config.timeout:
            raise ResourceLimitError(f"solver time budget of {self.config.timeout:g}s exhausted")

    # Main loop

    def prove(
        self, reuse: Iterable[QuantifiedPredicate] = ()
    ) -> InductiveInvariant | TraceCex:
        """Prove the safety property of the instance or find a counterexample.

        Raises:
            ResourceLimitError: frame, CTI or solver time budget exhausted
            SolverError: solver failure
            EngineError: a returned invariant failed its ground checks
        """
        owned = self.session is None
        if owned:
            self.session = open_session(self.inst, self.config, name="ic3")
        self._started = time.perf_counter()
        try:
            return self._prove(list(reuse))
        finally:
            self._sync_stats()
            if owned and self.session is not None:
                self.session.close()
                self.session = None

    def _sync_stats(self) -> None:
        if self.session is not None:
            self.stats.smt_queries = self.session.stats.queries
            self.stats.smt_seconds = self.session.stats.seconds
        self.stats.wall_seconds = time.perf_counter() - self._started

    def _prove(self, reuse: list[QuantifiedPredicate]) -> InductiveInvariant | TraceCex:
        session = self.session
        assert session is not None
        session.assert_guarded(INIT, self.inst.init)
        session.assert_guarded(PROP, self.inst.safety)

        bad_init = session.check({"bad": mk_not(self.inst.safety)}, [INIT], kind="init")
        if bad_init.is_sat:
            logger.info("an initial state violates the safety property")
            return self._trace([self._model_cube(session.state(bad_init))])

        self._new_frame()  # F_0
        self._new_frame()  # F_1
        self._seed(reuse)

        while True:
            self._check_budgets()
            cex = self._block_top()
            if cex is not None:
                return cex
            self._new_frame()
            converged = self.forward_propagate()
            self._sync_stats()
            logger.info(
                "frame %d: learned=%d, ctis=%d, smt=%d",
                self.top, self.stats.learned, self.stats.ctis, self.stats.smt_queries,
            )
            if converged is not None:
                return self._invariant(converged)

    def _seed(self, reuse: list[QuantifiedPredicate]) -> None:
        for pred in reuse:
            if self.holds_relatively(expand(pred, self.inst), 1):
                self._learn(pred, 1)
                self.stats.reused += 1
            else:
                logger.debug("reuse rejected: %s", pred)
        if reuse:
            logger.info("reused %d of %d predicates", self.stats.reused, len(reuse))

    def _block_top(self) -> TraceCex | None:
        session = self.session
        assert session is not None
        bad = {"bad": mk_not(prime(self.inst.safety))}
        while True:
            result = session.check(bad, [TRANS, *self.active(self.top)], kind="cti")
            if result.is_unsat:
                return None
            if not result.is_sat:
                raise EngineError(f"solver answered unknown at frame {self.top}: {result.reason}")
            self._check_budgets()
            self.stats.ctis += 1
            cti = self._model_cube(session.state(result))
            chain = self.rec_block_cube(cti, self.top)
            if chain is not None:
                final = self._model_cube(session.state(result, primed=True))
                return self._trace([*chain, final])

    def rec_block_cube(self, cti: GroundCube, i: int) -> list[GroundCube] | None:
        """Block ``cti`` at frame ``i``, recursively blocking its predecessors.

        Returns None once blocked, or the states of a path from an initial
        state to ``cti`` when frame 0 is reached.
        """
        session = self.session
        assert session is not None
        queue: list[tuple[int, int, _Obligation]] = []
        heapq.heappush(queue, (i, next(self._seq), _Obligation(cti, i)))
        while queue:
            level, _, ob = heapq.heappop(queue)
            self.stats.obligations += 1
            if level == 0 or not self.excludes_init(ob.cube):
                return self._path(ob)
            if self._blocked(ob.cube, level):
                continue
            step = {f"c{k}": g for k, g in enumerate(self._primed_literals(ob.cube))}
            result = session.check(step, [TRANS, *self.active(level - 1)], kind="block")
            if result.is_sat:
                self._check_budgets()
                self.stats.ctis += 1
                pred = _Obligation(self._model_cube(session.state(result)), level - 1, ob)
                heapq.heappush(queue, (level - 1, next(self._seq), pred))
                heapq.heappush(queue, (level, next(self._seq), ob))
                continue
            self._generalize_and_learn(ob.cube, level)
        return None

    def _primed_literals(self, cube: GroundCube) -> list[GFormula]:
        return [literal_formula(lit, primed=True) for lit in cube]

    def _blocked(self, cube: GroundCube, level: int) -> bool:
        assert self.session is not None
        return self.session.is_unsat({"cube": cube_formula(cube)}, self.active(level), kind="blocked")

    def _generalize_and_learn(self, cube: GroundCube, level: int) -> None:
        session = self.session
        assert session is not None
        core = minimal_unsat_core(
            session,
            cube,
            active=[TRANS, *self.active(level - 1)],
            primed=True,
            admissible=self.excludes_init,
            order=self._literal_order,
        )
        phi = core.negate()
        if self.config.symmetry_spot_checks:
            self._spot_check(phi, level)
        pred = sym_boost(phi, self.inst, self.group)
        oracle = _LevelOracle(self, level)
        if self.config.antecedent_reduction:
            pred = antecedent_reduction(pred, oracle)
        if self.config.epr_reduction:
            pred = epr_reduction(pred, self.graph, oracle)
        if self.config.debug_checks and not self.holds_relatively(expand(pred, self.inst), level):
            raise EngineError(f"learned predicate is not relatively inductive: {pred}")
        self._learn(pred, level)

    def _spot_check(self, phi: GroundClause, level: int) -> None:
        """Every sampled γ-image of a blocked clause is blocked too."""
        assert self.session is not None
        for _ in range(self.config.symmetry_spot_checks):
            gamma = self.group.random_element(self._rng)
            image = clause_formula(self.group.apply(gamma, phi))
            if not self.session.is_unsat(
                {"goal": mk_not(prime(image))}, [TRANS, *self.active(level - 1)], kind="spot"
            ):
                raise EngineError(f"symmetric image of a blocked clause is reachable: {image}")

    def forward_propagate(self) -> int | None:
        """Push predicates to the next frame when they stay relatively inductive.

        Returns the index of the first frame left empty, or None.
        """
        session = self.session
        assert session is not None
        for k in range(1, self.top):
            for pred in list(self.frames[k].learned):
                goal = {"goal": mk_not(prime(expand(pred, self.inst)))}
                if session.is_unsat(goal, [TRANS, *self.active(k)], kind="push"):
                    self.frames[k].learned.remove(pred)
                    self.frames[k + 1].learned.append(pred)
                    session.assert_guarded(self.frames[k + 1].level, expand(pred, self.inst))
            if not self.frames[k].learned:
                return k
        return None

    # Results

    def _path(self, ob: _Obligation) -> list[GroundCube]:
        states = []
        node: _Obligation | None = ob
        while node is not None:
            states.append(node.cube)
            node = node.parent
        return states

    def _trace(self, states: list[GroundCube]) -> TraceCex:
        logger.info("counterexample of length %d at %s", len(states), self.inst.describe_sizes())
        return TraceCex(tuple(states), dict(self.inst.sizes))

    def _closed(self, preds: Sequence[QuantifiedPredicate]) -> bool:
        """Whether the safety property strengthened by ``preds`` is closed under ``T``."""
        assert self.session is not None
        inv = mk_and([self.inst.safety, *(expand(p, self.inst) for p in preds)])
        return self.session.is_unsat(
            {"inv": inv, "goal": mk_not(prime(inv))}, [TRANS], kind="prune"
        )

    def _prune(self, preds: list[QuantifiedPredicate]) -> list[QuantifiedPredicate]:
        """Drop each predicate the others stay inductive without.

        Every learned predicate holds initially, so closure is all that needs
        re-checking. Non-compact predicates are tried first, then learning order.
        """
        kept = list(preds)
        for pred in sorted(preds, key=lambda p: (p.compact, preds.index(p))):
            rest = [p for p in kept if p != pred]
            if self._closed(rest):
                kept = rest
                self.stats.pruned += 1
        if self.stats.pruned:
            logger.info("pruned %d of %d predicates", self.stats.pruned, len(preds))
        return kept

    def _invariant(self, k: int) -> InductiveInvariant:
        learned: dict[QuantifiedPredicate, None] = {}
        for frame in self.frames[k + 1 :]:
            for pred in frame.learned:
                learned.setdefault(pred)
        strengthening = list(learned)
        if self.config.prune_invariant:
            strengthening = self._prune(strengthening)
        self._sync_stats()
        inv = InductiveInvariant(tuple(strengthening), dict(self.inst.sizes), k, self.stats)
        assert self.session is not None
        failures = [
            msg for result in check_invariant(self.session, inv.candidate(self.inst))
            for msg in result.errors
        ]
        if failures:
            raise EngineError("invariant failed its ground checks: " + "; ".join(failures))
        logger.info(
            "converged at frame %d with %d strengthening predicates",
            k, len(inv.strengthening),
        )
        return inv
