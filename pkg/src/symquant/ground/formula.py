"""Quantifier-free ground formulas over state atoms and auxiliary definition atoms.

Build them with the ``mk_*`` constructors, which fold constants and flatten
nested conjunctions and disjunctions.
"""

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass

from .clause import Atom, GroundClause, GroundCube, Literal


@dataclass(frozen=True, slots=True)
class GConst:
    value: bool


@dataclass(frozen=True, slots=True)
class GAtom:
    """A ground atom in the current (``primed=False``) or next state."""

    atom: Atom
    primed: bool = False


@dataclass(frozen=True, slots=True)
class GNot:
    arg: "GFormula"


@dataclass(frozen=True, slots=True)
class GAnd:
    args: tuple["GFormula", ...]


@dataclass(frozen=True, slots=True)
class GOr:
    args: tuple["GFormula", ...]


@dataclass(frozen=True, slots=True)
class GIff:
    left: "GFormula"
    right: "GFormula"


GFormula = GConst | GAtom | GNot | GAnd | GOr | GIff

G_TRUE = GConst(True)
G_FALSE = GConst(False)


def mk_const(value: bool) -> GConst:
    return G_TRUE if value else G_FALSE


def mk_not(arg: GFormula) -> GFormula:
    if isinstance(arg, GConst):
        return mk_const(not arg.value)
    if isinstance(arg, GNot):
        return arg.arg
    return GNot(arg)


def mk_and(args: Iterable[GFormula]) -> GFormula:
    flat: list[GFormula] = []
    for arg in args:
        if isinstance(arg, GConst):
            if not arg.value:
                return G_FALSE
            continue
        if isinstance(arg, GAnd):
            flat.extend(arg.args)
        else:
            flat.append(arg)
    if not flat:
        return G_TRUE
    if len(flat) == 1:
        return flat[0]
    return GAnd(tuple(flat))


def mk_or(args: Iterable[GFormula]) -> GFormula:
    flat: list[GFormula] = []
    for arg in args:
        if isinstance(arg, GConst):
            if arg.value:
                return G_TRUE
            continue
        if isinstance(arg, GOr):
            flat.extend(arg.args)
        else:
            flat.append(arg)
    if not flat:
        return G_FALSE
    if len(flat) == 1:
        return flat[0]
    return GOr(tuple(flat))


def mk_implies(left: GFormula, right: GFormula) -> GFormula:
    return mk_or([mk_not(left), right])


def mk_iff(left: GFormula, right: GFormula) -> GFormula:
    if isinstance(left, GConst):
        return right if left.value else mk_not(right)
    if isinstance(right, GConst):
        return left if right.value else mk_not(left)
    return GIff(left, right)


def literal_formula(lit: Literal, primed: bool = False) -> GFormula:
    atom = GAtom(lit.atom, primed)
    return atom if lit.positive else GNot(atom)


def clause_formula(clause: GroundClause, primed: bool = False) -> GFormula:
    return mk_or(literal_formula(lit, primed) for lit in clause)


def cube_formula(cube: GroundCube, primed: bool = False) -> GFormula:
    return mk_and(literal_formula(lit, primed) for lit in cube)


def prime(g: GFormula, primed: bool = True) -> GFormula:
    """Move every atom of ``g`` to the next (or back to the current) state."""
    match g:
        case GConst():
            return g
        case GAtom(atom, _):
            return GAtom(atom, primed)
        case GNot(arg):
            return GNot(prime(arg, primed))
        case GAnd(args):
            return GAnd(tuple(prime(a, primed) for a in args))
        case GOr(args):
            return GOr(tuple(prime(a, primed) for a in args))
        case GIff(left, right):
            return GIff(prime(left, primed), prime(right, primed))
    raise TypeError(f"not a ground formula: {g!r}")


def gatoms(g: GFormula) -> Iterator[GAtom]:
    stack = [g]
    while stack:
        node = stack.pop()
        match node:
            case GAtom():
                yield node
            case GNot(arg):
                stack.append(arg)
            case GAnd(args) | GOr(args):
                stack.extend(args)
            case GIff(left, right):
                stack.append(left)
                stack.append(right)


def evaluate(g: GFormula, value: Callable[[GAtom], bool]) -> bool:
    """Truth value of ``g`` given a valuation of its atoms."""
    match g:
        case GConst(v):
            return v
        case GAtom():
            return value(g)
        case GNot(arg):
            return not evaluate(arg, value)
        case GAnd(args):
            return all(evaluate(a, value) for a in args)
        case GOr(args):
            return any(evaluate(a, value) for a in args)
        case GIff(left, right):
            return evaluate(left, value) == evaluate(right, value)
    raise TypeError(f"not a ground formula: {g!r}")


def as_clause(g: GFormula) -> GroundClause | None:
    """``g`` as a clause when it is a disjunction of current-state literals.

    Returns None for formulas of any other shape; tautologies (``true`` or a
    complementary pair) also return None.
    """
    if g == G_FALSE:
        return GroundClause(())
    parts = g.args if isinstance(g, GOr) else (g,)
    literals = []
    for part in parts:
        match part:
            case GAtom(atom, False):
                literals.append(Literal(atom, True))
            case GNot(GAtom(atom, False)):
                literals.append(Literal(atom, False))
            case _:
                return None
    try:
        return GroundClause(literals)
    except ValueError:
        return None
