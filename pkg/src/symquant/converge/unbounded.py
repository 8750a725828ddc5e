"""Unbounded induction checks, emitted as SMT-LIB2 over uninterpreted sorts.

The file holds two goals, each expected ``unsat``: an initial state outside
the invariant, and an invariant state stepping outside it. The goals may
leave the decidable fragment, so a run never waits on them unless asked to.
"""

import logging
import subprocess
from collections.abc import Mapping, Sequence
from enum import Enum
from pathlib import Path

from ..engine.frames import InductiveInvariant
from ..spec.ast import (
    MEMBERSHIP_NAME,
    ActionDecl,
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
    RelationDecl,
    Term,
    Var,
    applications,
)
from ..solver.smtlib import quote

logger = logging.getLogger(__name__)

GOALS = ("initiation", "consecution")


class UnboundedStatus(str, Enum):
    NOT_CHECKED = "emitted; not checked"
    CONFIRMED = "confirmed"
    NOT_CONFIRMED = "finite cutoff reached; unbounded check not confirmed"


def _symbol(name: str, primed: bool = False) -> str:
    return quote(name + ("'" if primed else ""))


def _member_symbol(dependent: str) -> str:
    return quote(f"{MEMBERSHIP_NAME}_{dependent}")


def _term(t: Term) -> str:
    if isinstance(t, Const):
        raise ValueError(f"constant {t.name} has no meaning at unbounded size")
    return quote(t.name)


def _bindings(bindings: Sequence[tuple[str, str]]) -> str:
    return "(" + " ".join(f"({quote(v)} {quote(s)})" for v, s in bindings) + ")"


def _nary(op: str, parts: list[str], unit: str) -> str:
    if not parts:
        return unit
    if len(parts) == 1:
        return parts[0]
    return f"({op} {' '.join(parts)})"


def formula_to_smt(f: Formula, scope: Mapping[str, str], primed: bool = False) -> str:
    """Render ``f`` over uninterpreted sorts.

    ``scope`` maps the free variables of ``f`` to their sorts. With ``primed``
    every application refers to the next state.

    Raises:
        ValueError: ``f`` mentions instance constants
    """
    def sub(g: Formula) -> str:
        return formula_to_smt(g, scope, primed)

    match f:
        case BoolConst(value):
            return "true" if value else "false"
        case App(name, args, prime):
            head = _symbol(name, prime or primed)
            return f"({head} {' '.join(_term(a) for a in args)})" if args else head
        case Member(element, group):
            if not isinstance(group, Var) or group.name not in scope:
                raise ValueError(f"membership in unbound term {group!r}")
            return f"({_member_symbol(scope[group.name])} {_term(element)} {_term(group)})"
        case Eq(left, right):
            return f"(= {_term(left)} {_term(right)})"
        case Distinct(terms):
            if len(terms) < 2:
                return "true"
            return f"(distinct {' '.join(_term(t) for t in terms)})"
        case Iff(left, right):
            return f"(= {sub(left)} {sub(right)})"
        case Not(arg):
            return f"(not {sub(arg)})"
        case And(args):
            return _nary("and", [sub(a) for a in args], "true")
        case Or(args):
            return _nary("or", [sub(a) for a in args], "false")
        case Implies(left, right):
            return f"(=> {sub(left)} {sub(right)})"
        case Forall(bindings, body) | Exists(bindings, body):
            quantifier = "forall" if isinstance(f, Forall) else "exists"
            inner = formula_to_smt(body, {**scope, **dict(bindings)}, primed)
            if not bindings:
                return inner
            return f"({quantifier} {_bindings(bindings)} {inner})"
    raise TypeError(f"not a formula: {f!r}")


def _definition_order(spec: ProtocolSpec) -> list[RelationDecl]:
    definitions = {d.name: d for d in spec.definitions}
    ordered: list[RelationDecl] = []
    done: set[str] = set()

    def visit(name: str) -> None:
        if name in done:
            return
        done.add(name)
        body = definitions[name].body
        if body is not None:
            for app in applications(body):
                if app.name in definitions:
                    visit(app.name)
        ordered.append(definitions[name])

    for name in definitions:
        visit(name)
    return ordered


def _declarations(spec: ProtocolSpec) -> list[str]:
    lines = [f"(declare-sort {quote(s.name)} 0)" for s in spec.sorts]
    for dep in spec.dependent_sorts:
        base = quote(dep.base or "")
        dsort = quote(dep.name)
        member = _member_symbol(dep.name)
        lines.append(f"(declare-fun {member} ({base} {dsort}) Bool)")
        lines.append(
            f"(assert (forall ((|Q1| {dsort}) (|Q2| {dsort})) "
            f"(exists ((|N| {base})) (and ({member} |N| |Q1|) ({member} |N| |Q2|)))))"
        )
    for rel in spec.state_relations:
        args = " ".join(quote(s) for s in rel.arg_sorts)
        for primed in (False, True):
            lines.append(f"(declare-fun {_symbol(rel.name, primed)} ({args}) Bool)")
    for d in _definition_order(spec):
        assert d.body is not None
        params = tuple(zip(d.params, d.arg_sorts, strict=True))
        for primed in (False, True):
            body = formula_to_smt(d.body, dict(params), primed)
            lines.append(f"(define-fun {_symbol(d.name, primed)} {_bindings(params)} Bool {body})")
    for axiom in spec.axioms:
        for primed in (False, True):
            lines.append(f"(assert {formula_to_smt(axiom, {}, primed)})")
    return lines


def _unchanged(rel: RelationDecl) -> str:
    names = [f"|A{i}|" for i in range(len(rel.arg_sorts))]
    current = f"({_symbol(rel.name)} {' '.join(names)})" if names else _symbol(rel.name)
    nxt = f"({_symbol(rel.name, True)} {' '.join(names)})" if names else _symbol(rel.name, True)
    equal = f"(= {nxt} {current})"
    if not names:
        return equal
    bindings = " ".join(f"({n} {quote(s)})" for n, s in zip(names, rel.arg_sorts, strict=True))
    return f"(forall ({bindings}) {equal})"


def _action(action: ActionDecl, spec: ProtocolSpec) -> str:
    scope = dict(action.params)
    updated = set(action.updated_relations)
    parts = [formula_to_smt(action.guard, scope)]
    parts.extend(formula_to_smt(f, scope) for _, f in action.updates)
    parts.extend(_unchanged(r) for r in spec.state_relations if r.name not in updated)
    body = _nary("and", parts, "true")
    if not action.params:
        return body
    return f"(exists {_bindings(action.params)} {body})"


def transition_to_smt(spec: ProtocolSpec) -> str:
    return _nary("or", [_action(a, spec) for a in spec.actions], "false")


def unbounded_script(inv: InductiveInvariant, spec: ProtocolSpec) -> str:
    """SMT-LIB2 text of both unbounded goals for ``inv``.

    Raises:
        ValueError: a strengthening predicate mentions instance constants
    """
    conjuncts = [spec.safety, *(p.to_formula() for p in inv.strengthening)]
    current = _nary("and", [formula_to_smt(c, {}) for c in conjuncts], "true")
    nxt = _nary("and", [formula_to_smt(c, {}, True) for c in conjuncts], "true")
    sizes = ", ".join(f"{k}={v}" for k, v in sorted(inv.sizes.items()))
    lines = [
        f"; unbounded induction checks for an invariant proven at {sizes}",
        "; both goals are expected to be unsat",
        "(set-logic ALL)",
        *_declarations(spec),
    ]
    goals = {
        "initiation": f"(and {formula_to_smt(spec.init, {})} (not {current}))",
        "consecution": f"(and {current} {transition_to_smt(spec)} (not {nxt}))",
    }
    for name in GOALS:
        lines += [
            f'(echo "{name}")',
            "(push 1)",
            f"(assert {goals[name]})",
            "(check-sat)",
            "(pop 1)",
        ]
    return "\n".join(lines) + "\n"


def emit_unbounded_check(inv: InductiveInvariant, spec: ProtocolSpec, path: Path) -> Path:
    """Write the unbounded goals of ``inv`` to ``path``.

    Raises:
        OSError: the file cannot be written
        ValueError: a strengthening predicate mentions instance constants
    """
    path = Path(path)
    path.write_text(unbounded_script(inv, spec), encoding="utf-8")
    logger.info("unbounded check written to %s", path)
    return path


def parse_goal_answers(output: str) -> dict[str, str]:
    """Map each goal name echoed in ``output`` to the solver answer that follows it."""
    answers: dict[str, str] = {}
    current: str | None = None
    for line in output.splitlines():
        line = line.strip().strip('"')
        if line in GOALS:
            current = line
        elif current is not None and line in ("sat", "unsat", "unknown"):
            answers[current] = line
            current = None
    return answers


def run_unbounded(path: Path, command: Sequence[str], timeout: float) -> UnboundedStatus:
    """Feed the emitted file to ``command`` and report whether both goals are unsat."""
    script = Path(path).read_text(encoding="utf-8")
    try:
        proc = subprocess.run(
            list(command), input=script, capture_output=True, text=True, timeout=timeout
        )
    except subprocess.TimeoutExpired:
        logger.warning("unbounded check timed out after %gs", timeout)
        return UnboundedStatus.NOT_CONFIRMED
    except OSError as exc:
        logger.warning("unbounded check could not run: %s", exc)
        return UnboundedStatus.NOT_CONFIRMED
    answers = parse_goal_answers(proc.stdout)
    if all(answers.get(goal) == "unsat" for goal in GOALS):
        logger.info("unbounded check confirmed")
        return UnboundedStatus.CONFIRMED
    logger.warning("unbounded check not confirmed: %s", answers or proc.stderr.strip()[:200])
    return UnboundedStatus.NOT_CONFIRMED
