"""Finite instances of a protocol and grounding of formulas over them."""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import prod

from ..errors import InstanceError
from ..spec.ast import (
    And,
    App,
    BoolConst,
    Const,
    Distinct,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Member,
    Not,
    Or,
    ProtocolSpec,
    Term,
)
from .clause import Atom, GroundCube, Literal
from .constants import (
    Constant,
    SizeAssignment,
    build_constant_table,
    sort_sizes,
    validate_sizes,
)
from .formula import (
    G_FALSE,
    GAtom,
    GFormula,
    evaluate,
    mk_and,
    mk_const,
    mk_iff,
    mk_implies,
    mk_not,
    mk_or,
)

logger = logging.getLogger(__name__)

MAX_STATE_VARS = 1_000_000


class Frame(str, Enum):
    CURRENT = "current"
    NEXT = "next"


Env = Mapping[str, Constant]


@dataclass(frozen=True)
class GroundAction:
    """One action instantiated at one tuple of parameter constants.

    Attributes:
        name: Action name
        params: Parameter constants, in declaration order
        guard: Ground guard over the current state
        update: Conjunction of the ground update formulas
        updated: State indices of every atom of an updated relation
        frame: Conjunction of ``x' = x`` for atoms of relations the action does not update
    """

    name: str
    params: tuple[Constant, ...]
    guard: GFormula
    update: GFormula
    updated: tuple[int, ...]
    frame: GFormula

    @property
    def label(self) -> str:
        return f"{self.name}({','.join(c.name for c in self.params)})"

    @property
    def formula(self) -> GFormula:
        return mk_and([self.guard, self.update, self.frame])


class FiniteInstance:
    """A protocol at one size assignment.

    Immutable after construction. Definitions are kept as auxiliary atoms
    whose ground bodies live in ``definitions``; they are never inlined.

    Attributes:
        spec: The protocol
        sizes: Sizes of the independent sorts
        sort_sizes: Sizes of all sorts (dependent ones derived)
        constants: Constant table per sort
        state_atoms: Ground state atoms; position is the state variable id
        aux_atoms: Ground definition atoms
        definitions: Ground body (over current-state atoms) of every auxiliary atom
        axioms: Grounded axioms
        init: Grounded initial condition
        safety: Grounded safety property
        actions: Every ground action instance
        trans: Disjunction of all ground action formulas
    """

    def __init__(self, spec: ProtocolSpec, sizes: SizeAssignment):
        self.spec = spec
        self.sizes = validate_sizes(spec, sizes)
        self.sort_sizes = sort_sizes(spec, self.sizes)
        count = sum(
            prod(self.sort_sizes[s] for s in rel.arg_sorts) for rel in spec.state_relations
        )
        if count > MAX_STATE_VARS:
            raise InstanceError(
                f"instance {self.describe_sizes()} has {count} state variables "
                f"(limit {MAX_STATE_VARS})"
            )
        self.constants = build_constant_table(spec, self.sizes)
        self._signatures = {rel.name: rel.arg_sorts for rel in spec.relations}
        self.symbol_rank = {
            rel.name: rank for rank, rel in enumerate(spec.relations)
        }

        self.state_atoms = tuple(
            atom for rel in spec.state_relations for atom in self._atoms_of(rel.name)
        )
        self.state_index = {atom: i for i, atom in enumerate(self.state_atoms)}
        self.aux_atoms = tuple(
            atom for rel in spec.definitions for atom in self._atoms_of(rel.name)
        )
        self.definitions: dict[Atom, GFormula] = {}
        for rel in spec.definitions:
            assert rel.body is not None
            for atom in self._atoms_of(rel.name):
                env = {
                    var: self.constants[sort][i]
                    for var, sort, i in zip(rel.params, rel.arg_sorts, atom.args, strict=True)
                }
                self.definitions[atom] = self.ground(rel.body, Frame.CURRENT, env)

        self.axioms = mk_and(self.ground(a) for a in spec.axioms)
        if self.axioms == G_FALSE:
            raise InstanceError(f"axioms are unsatisfiable at {self.describe_sizes()}")
        self.init = self.ground(spec.init)
        self.safety = self.ground(spec.safety)
        self.actions = tuple(self._ground_actions())
        self.trans = mk_or(a.formula for a in self.actions)
        logger.debug(
            "built instance %s: %d state variables, %d auxiliary, %d ground actions",
            self.describe_sizes(), len(self.state_atoms), len(self.aux_atoms), len(self.actions),
        )

    # Vocabulary

    @property
    def num_state_vars(self) -> int:
        return len(self.state_atoms)

    def size(self, sort: str) -> int:
        return self.sort_sizes[sort]

    def signature(self, symbol: str) -> tuple[str, ...]:
        return self._signatures[symbol]

    def is_state(self, atom: Atom) -> bool:
        return atom in self.state_index

    def constant(self, sort: str, index: int) -> Constant:
        return self.constants[sort][index]

    def atom_name(self, atom: Atom) -> str:
        sorts = self.signature(atom.symbol)
        if not sorts:
            return atom.symbol
        names = [self.constants[s][i].name for s, i in zip(sorts, atom.args, strict=True)]
        return f"{atom.symbol}({','.join(names)})"

    def describe_sizes(self) -> str:
        return "(" + ", ".join(f"{k}={v}" for k, v in self.sizes.items()) + ")"

    def literal_key(self, lit: Literal) -> tuple[int, tuple[int, ...], bool]:
        """Canonical ordering: relation declaration order, constant indices, polarity."""
        return (self.symbol_rank[lit.atom.symbol], lit.atom.args, not lit.positive)

    def sorted_literals(self, literals: Iterable[Literal]) -> list[Literal]:
        return sorted(literals, key=self.literal_key)

    def _atoms_of(self, symbol: str) -> list[Atom]:
        sorts = self.signature(symbol)
        ranges = [range(self.sort_sizes[s]) for s in sorts]
        return [Atom(symbol, args) for args in product(*ranges)]

    # Grounding

    def _resolve(self, term: Term, env: Env) -> Constant:
        if isinstance(term, Const):
            return self.constants[term.sort][term.index]
        try:
            return env[term.name]
        except KeyError:
            raise InstanceError(f"free variable {term.name} while grounding") from None

    def ground(self, f: Formula, frame: Frame = Frame.CURRENT, env: Env | None = None) -> GFormula:
        """Ground ``f`` with its free variables bound by ``env``.

        Quantifiers expand over the constant tables: ``forall`` to a
        conjunction, ``exists`` to a disjunction.
        """
        return self._ground(f, frame is Frame.NEXT, dict(env or {}))

    def _ground(self, f: Formula, next_state: bool, env: dict[str, Constant]) -> GFormula:
        match f:
            case BoolConst(value):
                return mk_const(value)
            case App(name, args, primed):
                atom = Atom(name, tuple(self._resolve(a, env).index for a in args))
                return GAtom(atom, primed or next_state)
            case Member(element, group):
                elem = self._resolve(element, env)
                return mk_const(elem.index in self._resolve(group, env).members)
            case Eq(left, right):
                return mk_const(self._resolve(left, env) == self._resolve(right, env))
            case Distinct(terms):
                consts = [self._resolve(t, env) for t in terms]
                return mk_const(len(set(consts)) == len(consts))
            case Not(arg):
                return mk_not(self._ground(arg, next_state, env))
            case And(args):
                return mk_and(self._ground(a, next_state, env) for a in args)
            case Or(args):
                return mk_or(self._ground(a, next_state, env) for a in args)
            case Implies(left, right):
                return mk_implies(
                    self._ground(left, next_state, env), self._ground(right, next_state, env)
                )
            case Iff(left, right):
                return mk_iff(
                    self._ground(left, next_state, env), self._ground(right, next_state, env)
                )
            case Forall(bindings, body):
                return mk_and(
                    self._ground(body, next_state, {**env, **binding})
                    for binding in self._assignments(bindings)
                )
            case Exists(bindings, body):
                return mk_or(
                    self._ground(body, next_state, {**env, **binding})
                    for binding in self._assignments(bindings)
                )
        raise TypeError(f"not a formula: {f!r}")

    def _assignments(self, bindings: Sequence[tuple[str, str]]) -> Iterable[dict[str, Constant]]:
        names = [var for var, _ in bindings]
        tables = [self.constants[sort] for _, sort in bindings]
        for combo in product(*tables):
            yield dict(zip(names, combo, strict=True))

    def _ground_actions(self) -> Iterable[GroundAction]:
        unchanged = {
            rel.name: [
                mk_iff(GAtom(atom, True), GAtom(atom, False)) for atom in self._atoms_of(rel.name)
            ]
            for rel in self.spec.state_relations
        }
        for action in self.spec.actions:
            updated_rels = set(action.updated_relations)
            frame = mk_and(
                part
                for rel in self.spec.state_relations
                if rel.name not in updated_rels
                for part in unchanged[rel.name]
            )
            updated = tuple(
                self.state_index[atom]
                for rel in self.spec.state_relations
                if rel.name in updated_rels
                for atom in self._atoms_of(rel.name)
            )
            for env in self._assignments(action.params):
                guard = self._ground(action.guard, False, env)
                if guard == G_FALSE:
                    continue
                update = mk_and(self._ground(f, False, env) for _, f in action.updates)
                yield GroundAction(
                    action.name, tuple(env.values()), guard, update, updated, frame
                )

    # Evaluation

    def evaluate(
        self, g: GFormula, current: Sequence[bool], nxt: Sequence[bool] | None = None
    ) -> bool:
        """Truth value of ``g`` in a state (and successor); auxiliary atoms use their bodies."""
        caches: tuple[dict[Atom, bool], dict[Atom, bool]] = ({}, {})

        def value(ga: GAtom) -> bool:
            state = nxt if ga.primed else current
            if state is None:
                raise ValueError("formula refers to the next state but none was given")
            idx = self.state_index.get(ga.atom)
            if idx is not None:
                return bool(state[idx])
            cache = caches[ga.primed]
            if ga.atom not in cache:
                body = self.definitions[ga.atom]
                cache[ga.atom] = evaluate(body, lambda a: value(GAtom(a.atom, ga.primed)))
            return cache[ga.atom]

        return evaluate(g, value)

    def definition_literals(self, state: Sequence[bool]) -> list[Literal]:
        """Value of every auxiliary atom in ``state``, as literals."""
        return [
            Literal(atom, self.evaluate(GAtom(atom), state)) for atom in self.aux_atoms
        ]

    def state_as_cube(self, model: Mapping[int, bool] | Sequence[bool | None]) -> GroundCube:
        """Cube with one literal per state variable, polarity per ``model``.

        Raises:
            ValueError: ``model`` leaves a state variable unassigned
        """
        literals = []
        for i, atom in enumerate(self.state_atoms):
            if isinstance(model, Mapping):
                value = model.get(i)
            else:
                value = model[i] if i < len(model) else None
            if value is None:
                raise ValueError(f"partial model: no value for {self.atom_name(atom)}")
            literals.append(Literal(atom, bool(value)))
        return GroundCube(literals)

    def cube_state(self, cube: GroundCube) -> list[bool]:
        """Total state described by a cube over every state variable."""
        state: list[bool | None] = [None] * self.num_state_vars
        for lit in cube:
            idx = self.state_index.get(lit.atom)
            if idx is not None:
                state[idx] = lit.positive
        if any(v is None for v in state):
            raise ValueError("cube does not assign every state variable")
        return [bool(v) for v in state]


def build_instance(spec: ProtocolSpec, sizes: SizeAssignment) -> FiniteInstance:
    """Ground ``spec`` at ``sizes``.

    Raises:
        InstanceError: missing, zero or extra sizes; more than 10^6 state variables
    """
    return FiniteInstance(spec, sizes)


def ground_formula(
    inst: FiniteInstance, f: Formula, frame: Frame = Frame.CURRENT, env: Env | None = None
) -> GFormula:
    """Ground ``f`` in ``inst``; see FiniteInstance.ground."""
    return inst.ground(f, frame, env)


def state_as_cube(
    inst: FiniteInstance, model: Mapping[int, bool] | Sequence[bool | None]
) -> GroundCube:
    return inst.state_as_cube(model)
