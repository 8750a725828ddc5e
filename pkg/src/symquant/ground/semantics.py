"""Direct evaluation of spec formulas over a finite interpretation.

Independent of grounding: quantifiers are evaluated by iterating the
constant tables, definitions by evaluating their bodies. Used to cross-check
``FiniteInstance.ground``.
"""

from collections.abc import Mapping, Sequence

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
    RelationRole,
    Term,
)
from .clause import Atom
from .constants import Constant
from .instance import FiniteInstance


def evaluate_formula(
    inst: FiniteInstance,
    f: Formula,
    current: Sequence[bool],
    nxt: Sequence[bool] | None = None,
    env: Mapping[str, Constant] | None = None,
) -> bool:
    """Truth value of ``f`` in state ``current`` (primed atoms read ``nxt``)."""

    def term(t: Term, env: Mapping[str, Constant]) -> Constant:
        if isinstance(t, Const):
            return inst.constant(t.sort, t.index)
        return env[t.name]

    def holds(f: Formula, env: Mapping[str, Constant], primed: bool) -> bool:
        match f:
            case BoolConst(value):
                return value
            case App(name, args, app_primed):
                consts = [term(a, env) for a in args]
                use_next = primed or app_primed
                decl = inst.spec.relation(name)
                if decl.role is RelationRole.DEFINITION:
                    assert decl.body is not None
                    inner = dict(zip(decl.params, consts, strict=True))
                    return holds(decl.body, inner, use_next)
                state = nxt if use_next else current
                if state is None:
                    raise ValueError("formula refers to the next state but none was given")
                return bool(state[inst.state_index[Atom(name, tuple(c.index for c in consts))]])
            case Member(element, group):
                return term(element, env).index in term(group, env).members
            case Eq(left, right):
                return term(left, env) == term(right, env)
            case Distinct(terms):
                consts = [term(t, env) for t in terms]
                return len(set(consts)) == len(consts)
            case Not(arg):
                return not holds(arg, env, primed)
            case And(args):
                return all(holds(a, env, primed) for a in args)
            case Or(args):
                return any(holds(a, env, primed) for a in args)
            case Implies(left, right):
                return not holds(left, env, primed) or holds(right, env, primed)
            case Iff(left, right):
                return holds(left, env, primed) == holds(right, env, primed)
            case Forall(bindings, body):
                return all(holds(body, e, primed) for e in _extend(inst, env, bindings))
            case Exists(bindings, body):
                return any(holds(body, e, primed) for e in _extend(inst, env, bindings))
        raise TypeError(f"not a formula: {f!r}")

    return holds(f, dict(env or {}), False)


def _extend(inst: FiniteInstance, env: Mapping[str, Constant], bindings):
    if not bindings:
        yield dict(env)
        return
    (var, sort), rest = bindings[0], bindings[1:]
    for const in inst.constants[sort]:
        yield from _extend(inst, {**env, var: const}, rest)
