"""Deletion-based minimal unsatisfiable sub-cubes."""

import logging
from collections.abc import Callable, Iterable, Mapping

from ..ground.clause import GroundCube, Literal
from ..ground.formula import GFormula, literal_formula
from .session import SolverSession

logger = logging.getLogger(__name__)

Admissible = Callable[[GroundCube], bool]


def _labels(literals: Iterable[Literal]) -> dict[str, Literal]:
    return {f"lit{k}": lit for k, lit in enumerate(literals)}


def minimal_unsat_core(
    session: SolverSession,
    cube: GroundCube,
    base: Mapping[str, GFormula] | None = None,
    active: Iterable[str] = (),
    primed: bool = True,
    admissible: Admissible | None = None,
    order: Callable[[Literal], object] | None = None,
) -> GroundCube:
    """Subset-minimal sub-cube ``c`` of ``cube`` keeping ``base ∧ c`` unsatisfiable.

    Literals are assumed in the next state when ``primed``. The solver's
    unsat core seeds the search; then each literal is dropped in ``order``
    and kept out if the query stays unsat. ``admissible`` vetoes candidate
    sub-cubes (used to keep the result disjoint from the initial states).

    Raises:
        ValueError: ``base ∧ cube`` is satisfiable
        SolverError: solver failure
    """
    base = dict(base or {})
    active = list(active)
    ordered = sorted(cube, key=order) if order is not None else list(cube)
    labels = _labels(ordered)

    def query(lits: list[Literal]) -> frozenset[str] | None:
        assumptions = dict(base)
        assumptions.update(
            {label: literal_formula(lit, primed) for label, lit in labels.items() if lit in lits}
        )
        result = session.check(assumptions, active, kind="mus")
        return result.core if result.is_unsat else None

    core = query(ordered)
    if core is None:
        raise ValueError("cube is consistent with the base formula; nothing to minimize")
    current = [lit for label, lit in labels.items() if label in core]
    if admissible is not None and not admissible(GroundCube(current)):
        current = list(ordered)

    for lit in list(current):
        if lit not in current:
            continue
        candidate = [x for x in current if x != lit]
        if admissible is not None and not admissible(GroundCube(candidate)):
            continue
        shrunk = query(candidate)
        if shrunk is None:
            continue
        refined = [x for label, x in labels.items() if label in shrunk and x in candidate]
        if admissible is None or admissible(GroundCube(refined)):
            current = refined
        else:
            current = candidate
    logger.debug("minimal core: %d of %d literals", len(current), len(ordered))
    return GroundCube(current)
