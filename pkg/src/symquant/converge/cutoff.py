"""Finite convergence checks: is the invariant still inductive one size up?"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..checks import ConsecutionCheck, InitiationCheck
from ..config import RunConfig
from ..engine.frames import InductiveInvariant
from ..ground.instance import build_instance
from ..solver import open_session
from ..spec.ast import ProtocolSpec
from .schedule import SizeSchedule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SortCheck:
    """Outcome of the two checks at one enlarged instance."""

    sort: str
    sizes: dict[str, int]
    passed: bool
    errors: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class CutoffResult:
    """All per-sort checks; ``failed_sort`` is the first failing sort in declaration order."""

    checks: tuple[SortCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_sort(self) -> str | None:
        return next((c.sort for c in self.checks if not c.passed), None)


def _check_sort(
    inv: InductiveInvariant, spec: ProtocolSpec, sort: str, sizes: dict[str, int], config: RunConfig
) -> SortCheck:
    inst = build_instance(spec, sizes)
    candidate = inv.candidate(inst)
    with open_session(inst, config, name=f"cutoff-{sort}") as session:
        results = [
            InitiationCheck().run(session, candidate),
            ConsecutionCheck().run(session, candidate),
        ]
    errors = [msg for r in results for msg in r.errors]
    logger.info(
        "cutoff check at %s: %s", inst.describe_sizes(), "pass" if not errors else "fail"
    )
    return SortCheck(sort, sizes, not errors, errors)


def check_cutoff(
    inv: InductiveInvariant, spec: ProtocolSpec, sizes: dict[str, int], config: RunConfig
) -> CutoffResult:
    """Check initiation and consecution of ``inv`` with each independent sort enlarged by one.

    With no independent sorts there is nothing to check and the result passes.

    Raises:
        ResourceLimitError: an enlarged instance exceeds the size cap
        SolverError: solver failure
    """
    schedule = SizeSchedule(spec, dict(sizes), config.max_vars, [dict(sizes)])
    targets = [(s.name, schedule.enlarged(s.name)) for s in spec.independent_sorts]
    for _, bigger in targets:
        schedule.check_cap(bigger)
    if config.cutoff_workers > 1 and len(targets) > 1:
        with ThreadPoolExecutor(max_workers=config.cutoff_workers) as pool:
            futures = [pool.submit(_check_sort, inv, spec, s, b, config) for s, b in targets]
            checks = [f.result() for f in futures]
    else:
        checks = [_check_sort(inv, spec, s, b, config) for s, b in targets]
    return CutoffResult(tuple(checks))
