"""Long-lived SMT-LIB2 solver sessions over a child process.

Every query of the induction engine is a ground Boolean query against one
instance. The session declares the instance vocabulary once, asserts the
transition relation once behind the ``act_trans`` activation literal, and
answers ``check`` calls with labeled assumptions inside a push/pop scope.
"""

import logging
import shlex
import subprocess
import time
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import IO

from ..config import RunConfig
from ..errors import SolverError, SymquantError
from ..ground.formula import GFormula, prime
from ..ground.instance import FiniteInstance
from ..spec.sexpr import SList, read_sexprs
from .smtlib import atom_name, to_smt, vocabulary

logger = logging.getLogger(__name__)

TRANS = "trans"

# Solver-side prefixes of activation literals and assumption labels.
LEVEL_PREFIX = "act_"
LABEL_PREFIX = "asm_"


class Verdict(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SolverResult:
    """Outcome of one check.

    Attributes:
        verdict: sat, unsat or unknown
        model: Value of every declared symbol the solver reported (sat only)
        core: Assumption labels in the unsat core (unsat only)
        reason: Solver explanation for unknown
    """

    verdict: Verdict
    model: Mapping[str, bool] | None = None
    core: frozenset[str] | None = None
    reason: str | None = None

    @property
    def is_sat(self) -> bool:
        return self.verdict is Verdict.SAT

    @property
    def is_unsat(self) -> bool:
        return self.verdict is Verdict.UNSAT


@dataclass
class SolverStats:
    queries: int = 0
    seconds: float = 0.0
    by_kind: dict[str, int] = field(default_factory=dict)

    def record(self, kind: str, seconds: float) -> None:
        self.queries += 1
        self.seconds += seconds
        self.by_kind[kind] = self.by_kind.get(kind, 0) + 1


def resolve_solver_command(config: RunConfig) -> list[str]:
    """The configured solver command line.

    Raises:
        SolverError: no command configured
    """
    if config.solver_cmd and config.solver_cmd.strip():
        return shlex.split(config.solver_cmd)
    raise SolverError("no solver configured: pass --solver-cmd or set SYMQUANT_SOLVER_CMD")


def _balanced(text: str) -> bool:
    depth, in_quote, in_string = 0, False, False
    for ch in text:
        if in_string:
            in_string = ch != '"'
        elif in_quote:
            in_quote = ch != "|"
        elif ch == '"':
            in_string = True
        elif ch == "|":
            in_quote = True
        elif ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
    return depth == 0


class SolverSession:
    """One solver child process bound to one finite instance.

    Args:
        inst: The instance whose vocabulary is declared
        command: Solver executable and arguments; must read SMT-LIB2 on stdin
        seed: Value for ``:random-seed``
        transcript: File receiving every command sent, replayable offline
        name: Label used in log messages
    """

    def __init__(
        self,
        inst: FiniteInstance,
        command: Sequence[str],
        seed: int = 1,
        transcript: Path | None = None,
        name: str = "session",
    ):
        self.inst = inst
        self.command = list(command)
        self.seed = seed
        self.name = name
        self.stats = SolverStats()
        self.depth = 0
        self.levels: set[str] = set()
        self._proc: subprocess.Popen[str] | None = None
        self._transcript_path = transcript
        self._transcript: IO[str] | None = None
        self._labels = 0
        self._dead = False

    # Process plumbing

    def start(self) -> "SolverSession":
        try:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise SolverError(f"cannot start solver {shlex.join(self.command)}: {exc}") from exc
        if self._transcript_path is not None:
            self._transcript_path.parent.mkdir(parents=True, exist_ok=True)
            self._transcript = self._transcript_path.open("w", encoding="utf-8")
        self.send("(set-option :print-success false)")
        self.send("(set-option :produce-models true)")
        self.send("(set-option :produce-unsat-cores true)")
        self.send(f"(set-option :random-seed {self.seed})")
        self.send("(set-logic QF_UF)")
        self.send('(echo "ready")')
        reply = self._read_line()
        if "ready" not in reply:
            self._dead = True
            raise SolverError(f"solver {self.command[0]} failed the handshake: {reply.strip()!r}")
        for command in vocabulary(self.inst):
            self.send(command)
        self.assert_formula(self.inst.axioms)
        self.assert_formula(prime(self.inst.axioms))
        self.assert_guarded(TRANS, self.inst.trans)
        logger.debug(
            "%s: started %s on %s", self.name, shlex.join(self.command), self.inst.describe_sizes()
        )
        return self

    def close(self) -> None:
        if self._proc is not None:
            if self._proc.poll() is None:
                try:
                    self.send("(exit)")
                    self._proc.wait(timeout=5)
                except (SolverError, subprocess.TimeoutExpired):
                    self._proc.kill()
            self._proc = None
        if self._transcript is not None:
            self._transcript.close()
            self._transcript = None

    def __enter__(self) -> "SolverSession":
        return self if self._proc is not None else self.start()

    def __exit__(self, *exc: object) -> None:
        self.close()

    @property
    def alive(self) -> bool:
        return self._proc is not None and not self._dead and self._proc.poll() is None

    def send(self, command: str) -> None:
        if self._proc is None or self._proc.stdin is None or self._dead:
            raise SolverError(f"{self.name}: solver is not running")
        if self._transcript is not None:
            self._transcript.write(command + "\n")
        try:
            self._proc.stdin.write(command + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            self._dead = True
            raise SolverError(f"{self.name}: solver exited ({exc})") from exc

    def _read_line(self) -> str:
        assert self._proc is not None and self._proc.stdout is not None
        line = self._proc.stdout.readline()
        if not line:
            self._dead = True
            raise SolverError(f"{self.name}: solver exited unexpectedly")
        return line

    def _read_response(self) -> str:
        text = self._read_line()
        while not text.strip() or not _balanced(text):
            text += self._read_line()
        text = text.strip()
        if text.startswith("(error"):
            self._dead = True
            raise SolverError(f"{self.name}: solver reported {text}")
        return text

    # Assertions

    def assert_formula(self, g: GFormula) -> None:
        self.send(f"(assert {to_smt(g, self.inst)})")

    def push(self) -> None:
        self.send("(push 1)")
        self.depth += 1

    def pop(self) -> None:
        if self.depth == 0:
            raise SolverError(f"{self.name}: pop on an empty assertion stack")
        self.send("(pop 1)")
        self.depth -= 1

    def declare_level(self, name: str) -> None:
        """Declare an activation literal guarding a group of assertions."""
        if name not in self.levels:
            self.send(f"(declare-const {LEVEL_PREFIX}{name} Bool)")
            self.levels.add(name)

    def assert_guarded(self, level: str, g: GFormula) -> None:
        """Assert ``level => g``; the assertion only counts when ``level`` is assumed."""
        self.declare_level(level)
        self.send(f"(assert (=> {LEVEL_PREFIX}{level} {to_smt(g, self.inst)}))")

    # Queries

    def check(
        self,
        assumptions: Mapping[str, GFormula] | Iterable[GFormula] = (),
        active: Iterable[str] = (),
        kind: str = "query",
    ) -> SolverResult:
        """Check the permanent assertions, ``active`` levels and the labeled assumptions.

        Unlabeled assumptions get generated labels. The model covers every
        declared state and auxiliary symbol; the core lists only assumption
        labels.

        Raises:
            SolverError: the solver died or answered something unusable
        """
        if not isinstance(assumptions, Mapping):
            assumptions = {self._fresh_label(): g for g in assumptions}
        active = list(active)
        for level in active:
            if level not in self.levels:
                raise SolverError(f"{self.name}: unknown level {level}")
        self.push()
        started = time.perf_counter()
        try:
            for label, g in assumptions.items():
                self.send(f"(declare-const {LABEL_PREFIX}{label} Bool)")
                self.send(f"(assert (=> {LABEL_PREFIX}{label} {to_smt(g, self.inst)}))")
            names = [LABEL_PREFIX + label for label in assumptions]
            names += [LEVEL_PREFIX + level for level in active]
            self.send(f"(check-sat-assuming ({' '.join(names)}))")
            answer = self._read_response()
            if answer == "sat":
                self.send("(get-model)")
                result = SolverResult(Verdict.SAT, model=parse_model(self._read_response()))
            elif answer == "unsat":
                self.send("(get-unsat-core)")
                core = {
                    name.removeprefix(LABEL_PREFIX)
                    for name in parse_core(self._read_response())
                    if name.startswith(LABEL_PREFIX)
                }
                result = SolverResult(Verdict.UNSAT, core=frozenset(core & set(assumptions)))
            elif answer == "unknown":
                self.send("(get-info :reason-unknown)")
                result = SolverResult(Verdict.UNKNOWN, reason=self._read_response())
            else:
                self._dead = True
                raise SolverError(f"{self.name}: unexpected answer {answer!r}")
        finally:
            self.stats.record(kind, time.perf_counter() - started)
            if not self._dead:
                self.pop()
        return result

    def is_unsat(
        self,
        assumptions: Mapping[str, GFormula] | Iterable[GFormula] = (),
        active: Iterable[str] = (),
        kind: str = "query",
    ) -> bool:
        """Like ``check``, but ``unknown`` is an error.

        Raises:
            SolverError: unknown answer
        """
        result = self.check(assumptions, active, kind)
        if result.verdict is Verdict.UNKNOWN:
            raise SolverError(f"{self.name}: solver answered unknown ({result.reason})")
        return result.is_unsat

    def _fresh_label(self) -> str:
        self._labels += 1
        return f"a{self._labels}"

    # Models

    def state(self, result: SolverResult, primed: bool = False) -> list[bool]:
        """Total state read from a sat model; unreported variables are false."""
        if result.model is None:
            raise ValueError("result has no model")
        return [
            result.model.get(atom_name(self.inst, atom, primed), False)
            for atom in self.inst.state_atoms
        ]


def parse_model(text: str) -> dict[str, bool]:
    """Boolean constants of a ``get-model`` reply, with or without the ``model`` head."""
    try:
        exprs = read_sexprs(text)
    except SymquantError as exc:
        raise SolverError(f"unreadable model: {exc}") from exc
    if len(exprs) != 1 or not isinstance(exprs[0], SList):
        raise SolverError(f"unreadable model: {text[:80]!r}")
    entries = list(exprs[0])
    if entries and not isinstance(entries[0], SList) and str(entries[0]) == "model":
        entries = entries[1:]
    model: dict[str, bool] = {}
    for entry in entries:
        if not isinstance(entry, SList) or entry.head != "define-fun" or len(entry) != 5:
            continue
        _, name, params, sort, value = entry.items
        if isinstance(params, SList) and len(params) == 0 and str(sort) == "Bool":
            if str(value) in ("true", "false"):
                model[str(name)] = str(value) == "true"
    return model


def parse_core(text: str) -> set[str]:
    try:
        exprs = read_sexprs(text)
    except SymquantError as exc:
        raise SolverError(f"unreadable unsat core: {exc}") from exc
    if len(exprs) != 1 or not isinstance(exprs[0], SList):
        raise SolverError(f"unreadable unsat core: {text[:80]!r}")
    return {str(x) for x in exprs[0]}


def open_session(
    inst: FiniteInstance, config: RunConfig, name: str = "session"
) -> SolverSession:
    """Start a session for ``inst`` with the solver and logging settings of ``config``.

    Raises:
        SolverError: no solver, spawn failure or failed handshake
    """
    transcript = None
    if config.log_smt is not None:
        stamp = f"{name}-{'-'.join(f'{k}{v}' for k, v in inst.sizes.items())}"
        transcript = Path(config.log_smt) / f"{stamp}-{time.monotonic_ns()}.smt2"
    session = SolverSession(
        inst, resolve_solver_command(config), config.solver_seed, transcript, name
    )
    return session.start()
