"""The top-level verification loop: prove, check for a cutoff, grow, repeat."""

import logging
import tempfile
import time
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

from ..config import RunConfig
from ..engine import EngineStats, InductiveInvariant, SymIC3, TraceCex
from ..errors import EngineError, OracleCapError, ResourceLimitError
from ..ground.formula import mk_and
from ..ground.instance import FiniteInstance, build_instance
from ..oracle import check_invariant_explicit, replay
from ..quantinfer import QuantifiedPredicate
from ..solver import resolve_solver_command
from ..spec.ast import ProtocolSpec
from .cutoff import check_cutoff
from .results import RunResult, RunStats, format_certificate
from .schedule import SizeSchedule, default_sizes
from .unbounded import UnboundedStatus, emit_unbounded_check, run_unbounded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Safe:
    """The property holds at every size; ``invariant`` passed the cutoff checks.

    Attributes:
        invariant: Invariant proven at the cutoff sizes
        cutoff: Sizes at which the convergence checks passed
        history: Every size assignment visited, the base first
        unbounded: Status of the emitted unbounded check
        unbounded_path: Where the unbounded check was written, if anywhere
        oracle: Outcome of the explicit-state cross-check, if requested
    """

    invariant: InductiveInvariant
    cutoff: dict[str, int]
    history: list[dict[str, int]]
    stats: RunStats
    unbounded: UnboundedStatus = UnboundedStatus.NOT_CHECKED
    unbounded_path: Path | None = None
    oracle: str | None = None


@dataclass(frozen=True)
class Violated:
    trace: TraceCex
    sizes: dict[str, int]
    history: list[dict[str, int]]
    stats: RunStats
    oracle: str | None = None


@dataclass(frozen=True)
class ResourcesExhausted:
    reason: str
    history: list[dict[str, int]] = field(default_factory=list)
    stats: RunStats = field(default_factory=RunStats)


Verdict = Safe | Violated | ResourcesExhausted


def _accumulate(total: RunStats, stats: EngineStats) -> None:
    total.frames += stats.frames
    total.ctis += stats.ctis
    total.learned += stats.learned
    total.reused += stats.reused
    total.pruned += stats.pruned
    total.smt_queries += stats.smt_queries
    total.smt_seconds += stats.smt_seconds
    total.induction_runs += 1


def _growth_sort(inv: InductiveInvariant, inst: FiniteInstance, schedule: SizeSchedule) -> str:
    """Independent sort whose size a non-compact predicate depends on."""
    for pred in inv.strengthening:
        if pred.compact:
            continue
        for sort in inst.spec.sorts:
            used = pred.variable_count(sort.name) + pred.constant_count(sort.name)
            if used and used >= inst.size(sort.name):
                return schedule.independent(sort.name)
    return inst.spec.independent_sorts[0].name


def _oracle_invariant(inv: InductiveInvariant, inst: FiniteInstance) -> str:
    """Explicit-state check of ``inv`` in ``inst``.

    Raises:
        EngineError: the oracle finds the invariant is not inductive
    """
    try:
        verdict = check_invariant_explicit(mk_and(inv.candidate(inst).conjuncts), inst)
    except OracleCapError as exc:
        logger.info("oracle check skipped at %s: %s", inst.describe_sizes(), exc)
        return f"skipped at {inst.describe_sizes()}"
    if not verdict.holds:
        raise EngineError(
            f"oracle rejects the invariant at {inst.describe_sizes()}: {verdict.reason}"
        )
    return f"passed at {inst.describe_sizes()}"


def _oracle_trace(trace: TraceCex, inst: FiniteInstance) -> str:
    result = replay(list(trace.states), inst)
    if not result.valid:
        raise EngineError(
            f"oracle rejects the counterexample at step {result.broken_at}: {result.reason}"
        )
    return "counterexample replayed"


def run(
    spec: ProtocolSpec,
    sizes: Mapping[str, int] | None = None,
    config: RunConfig | None = None,
    unbounded_path: Path | None = None,
) -> Verdict:
    """Verify ``spec`` for every size, starting from ``sizes``.

    Proves the base instance, checks the invariant one size up per
    independent sort, and on failure grows that sort and proves again with
    the previous predicates offered for reuse. Budgets and the size cap end
    the run with ``ResourcesExhausted``.

    Raises:
        SolverError: solver failure
        EngineError: an internal re-check failed
    """
    config = config or RunConfig()
    stats = RunStats()
    started = time.perf_counter()
    history: list[dict[str, int]] = []
    try:
        schedule = SizeSchedule(spec, dict(sizes or default_sizes(spec)), config.max_vars)
        history = schedule.history
        verdict = _run(spec, schedule, config, stats, unbounded_path)
    except ResourceLimitError as exc:
        logger.warning("resources exhausted: %s", exc)
        verdict = ResourcesExhausted(str(exc), [dict(h) for h in history], stats)
    stats.wall_seconds = time.perf_counter() - started
    logger.info("verdict: %s", type(verdict).__name__)
    return verdict


def _run(
    spec: ProtocolSpec,
    schedule: SizeSchedule,
    config: RunConfig,
    stats: RunStats,
    unbounded_path: Path | None,
) -> Verdict:
    reuse: list[QuantifiedPredicate] = []
    while True:
        remaining = config.timeout - stats.smt_seconds
        if remaining <= 0:
            raise ResourceLimitError(f"solver time budget of {config.timeout:g}s exhausted")
        inst = build_instance(spec, schedule.current)
        logger.info("proving at %s", inst.describe_sizes())
        engine = SymIC3(inst, config.model_copy(update={"timeout": remaining}))
        try:
            outcome = engine.prove(reuse)
        finally:
            _accumulate(stats, engine.stats)
        history = [dict(h) for h in schedule.history]

        if isinstance(outcome, TraceCex):
            oracle = _oracle_trace(outcome, inst) if config.oracle_check else None
            return Violated(outcome, dict(inst.sizes), history, stats, oracle)

        if not outcome.compact:
            sort = _growth_sort(outcome, inst, schedule)
            logger.warning(
                "invariant at %s is not compact; growing %s", inst.describe_sizes(), sort
            )
            reuse = [p for p in outcome.strengthening if p.compact]
            schedule.grow(sort)
            continue

        oracle = _oracle_invariant(outcome, inst) if config.oracle_check else None
        cutoff = check_cutoff(outcome, spec, schedule.current, config)
        if not cutoff.passed:
            sort = cutoff.failed_sort
            assert sort is not None
            logger.info("convergence check failed for %s", sort)
            reuse = list(outcome.strengthening)
            schedule.grow(sort)
            continue

        if config.oracle_check:
            outcomes = [oracle or ""] + [
                _oracle_invariant(outcome, build_instance(spec, check.sizes))
                for check in cutoff.checks
            ]
            oracle = "; ".join(o for o in outcomes if o)
        return _safe(outcome, spec, schedule, config, stats, unbounded_path, oracle)


def _check_unbounded(path: Path, config: RunConfig) -> UnboundedStatus:
    return run_unbounded(path, resolve_solver_command(config), config.unbounded_timeout)


def _safe(
    inv: InductiveInvariant,
    spec: ProtocolSpec,
    schedule: SizeSchedule,
    config: RunConfig,
    stats: RunStats,
    unbounded_path: Path | None,
    oracle: str | None,
) -> Safe:
    status = UnboundedStatus.NOT_CHECKED
    if unbounded_path is not None:
        emit_unbounded_check(inv, spec, unbounded_path)
        if config.check_unbounded:
            status = _check_unbounded(unbounded_path, config)
    elif config.check_unbounded:
        with tempfile.TemporaryDirectory(prefix="symquant-") as scratch:
            path = emit_unbounded_check(inv, spec, Path(scratch) / "unbounded.smt2")
            status = _check_unbounded(path, config)
    logger.info(
        "safe with cutoff %s and %d strengthening predicates",
        schedule.current, len(inv.strengthening),
    )
    return Safe(
        inv,
        dict(schedule.current),
        [dict(h) for h in schedule.history],
        stats,
        status,
        unbounded_path,
        oracle,
    )


def verdict_result(verdict: Verdict, spec: ProtocolSpec, benchmark: str | None = None) -> RunResult:
    """The JSON-ready record of ``verdict``."""
    match verdict:
        case Safe():
            return RunResult(
                verdict="safe",
                benchmark=benchmark,
                sizes_history=verdict.history,
                cutoff_sizes=verdict.cutoff,
                certificate=format_certificate(verdict.invariant, benchmark),
                strengthening=[p.text() for p in verdict.invariant.strengthening],
                unbounded_check=verdict.unbounded.value,
                oracle_check=verdict.oracle,
                stats=verdict.stats,
            )
        case Violated():
            inst = build_instance(spec, verdict.sizes)
            return RunResult(
                verdict="violated",
                benchmark=benchmark,
                sizes_history=verdict.history,
                counterexample=verdict.trace.true_atoms(inst),
                oracle_check=verdict.oracle,
                stats=verdict.stats,
            )
        case ResourcesExhausted():
            return RunResult(
                verdict="resources-exhausted",
                benchmark=benchmark,
                sizes_history=verdict.history,
                reason=verdict.reason,
                stats=verdict.stats,
            )
    raise TypeError(f"not a verdict: {verdict!r}")
