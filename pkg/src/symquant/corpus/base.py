"""Bundled benchmark protocols and the mutation hook used to make unsafe variants."""

import logging
from abc import ABC, abstractmethod
from dataclasses import replace
from functools import cached_property
from importlib import resources

from pydantic import BaseModel, Field

from ..spec import TRUE, ProtocolSpec, load_spec

logger = logging.getLogger(__name__)


class BenchmarkParams(BaseModel):
    """Description of one bundled protocol.

    ``base_sizes`` is the starting size assignment of a verification run.
    """

    name: str = Field(min_length=1, description="Benchmark name, also the .spec file stem")
    base_sizes: dict[str, int] = Field(description="Sizes of the independent sorts")
    description: str = Field(default="", description="One-line summary")


class BaseBenchmark(ABC):
    """A protocol to verify.

    Subclasses supply the spec source text; parsing and typechecking are
    shared and cached.
    """

    def __init__(self, params: BenchmarkParams):
        self.params = params

    @property
    def name(self) -> str:
        return self.params.name

    @abstractmethod
    def text(self) -> str:
        """Spec source text of the protocol."""

    @cached_property
    def spec(self) -> ProtocolSpec:
        """The parsed and typechecked protocol.

        Raises:
            SpecSyntaxError: the bundled text is unreadable
            SpecError: the bundled text is not a valid protocol
        """
        return load_spec(self.text())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, base_sizes={self.params.base_sizes})"


class BundledBenchmark(BaseBenchmark):
    """A benchmark whose spec ships as package data next to this module."""

    def text(self) -> str:
        source = resources.files("symquant.corpus").joinpath(f"{self.name}.spec")
        return source.read_text(encoding="utf-8")


class MutatedBenchmark(BaseBenchmark):
    """``base`` with the guard of ``action`` replaced by ``true``.

    Only reachable through the test hooks of the command line.
    """

    def __init__(self, base: BaseBenchmark, action: str):
        super().__init__(
            base.params.model_copy(update={"name": f"{base.name}+drop-guard={action}"})
        )
        self.base = base
        self.action = action

    def text(self) -> str:
        return self.base.text()

    @cached_property
    def spec(self) -> ProtocolSpec:
        return drop_guard(self.base.spec, self.action)


def drop_guard(spec: ProtocolSpec, action: str) -> ProtocolSpec:
    """``spec`` with the guard of ``action`` replaced by ``true``.

    Raises:
        KeyError: no action is named ``action``
    """
    target = spec.action(action)
    actions = tuple(replace(a, guard=TRUE) if a is target else a for a in spec.actions)
    logger.info("dropped the guard of %s", action)
    return replace(spec, actions=actions)


_BENCHMARKS = (
    BenchmarkParams(
        name="toy_consensus",
        base_sizes={"node": 2, "value": 2},
        description="nodes vote once; a quorum of votes decides a value",
    ),
    BenchmarkParams(
        name="lock_server",
        base_sizes={"client": 2, "server": 1},
        description="clients take a server's semaphore while linked to it",
    ),
    BenchmarkParams(
        name="two_phase_commit",
        base_sizes={"node": 4},
        description="commit needs every yes vote; no votes and failures abort",
    ),
    BenchmarkParams(
        name="decentralized_lock",
        base_sizes={"node": 2},
        description="the lock passes between nodes by message",
    ),
    BenchmarkParams(
        name="simple_election",
        base_sizes={"acceptor": 2, "proposer": 2},
        description="a quorum of single promises elects a leader",
    ),
)


def list_benchmarks() -> list[BenchmarkParams]:
    return list(_BENCHMARKS)


def load_benchmark(name: str) -> BundledBenchmark:
    """Bundled benchmark by name; dashes and underscores are interchangeable.

    Raises:
        KeyError: unknown benchmark
    """
    key = name.replace("-", "_")
    for params in _BENCHMARKS:
        if params.name == key:
            return BundledBenchmark(params)
    known = ", ".join(p.name for p in _BENCHMARKS)
    raise KeyError(f"unknown benchmark {name!r} (known: {known})")
