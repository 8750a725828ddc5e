"""SMT-LIB2 rendering of ground formulas over a finite instance."""

from ..ground.clause import Atom
from ..ground.formula import GAnd, GAtom, GConst, GFormula, GIff, GNot, GOr, prime
from ..ground.instance import FiniteInstance


def quote(name: str) -> str:
    if "|" in name or "\\" in name:
        raise ValueError(f"cannot quote symbol {name!r}")
    return f"|{name}|"


def atom_name(inst: FiniteInstance, atom: Atom, primed: bool = False) -> str:
    """Unquoted solver name, e.g. ``vote(node_1,value_1)`` or ``vote'(node_1,value_1)``."""
    name = inst.atom_name(atom)
    if not primed:
        return name
    head, paren, rest = name.partition("(")
    return f"{head}'{paren}{rest}"


def atom_symbol(inst: FiniteInstance, atom: Atom, primed: bool = False) -> str:
    return quote(atom_name(inst, atom, primed))


def to_smt(g: GFormula, inst: FiniteInstance) -> str:
    """Render ``g`` as an SMT-LIB2 Boolean term."""
    match g:
        case GConst(value):
            return "true" if value else "false"
        case GAtom(atom, primed):
            return atom_symbol(inst, atom, primed)
        case GNot(arg):
            return f"(not {to_smt(arg, inst)})"
        case GAnd(args):
            return "(and " + " ".join(to_smt(a, inst) for a in args) + ")"
        case GOr(args):
            return "(or " + " ".join(to_smt(a, inst) for a in args) + ")"
        case GIff(left, right):
            return f"(= {to_smt(left, inst)} {to_smt(right, inst)})"
    raise TypeError(f"not a ground formula: {g!r}")


def vocabulary(inst: FiniteInstance) -> list[str]:
    """Declarations of every state and auxiliary atom in both states, plus the definitions."""
    commands = []
    for primed in (False, True):
        for atom in inst.state_atoms:
            commands.append(f"(declare-const {atom_symbol(inst, atom, primed)} Bool)")
    for primed in (False, True):
        for atom in inst.aux_atoms:
            commands.append(f"(declare-const {atom_symbol(inst, atom, primed)} Bool)")
    for atom, body in inst.definitions.items():
        for primed in (False, True):
            rendered = to_smt(prime(body, primed), inst)
            commands.append(f"(assert (= {atom_symbol(inst, atom, primed)} {rendered}))")
    return commands
