"""Shared fixtures: bundled protocols, small instances and the solver command."""

import os
import random
import shutil
from collections.abc import Callable

import pytest

from symquant.config import RunConfig
from symquant.corpus import load_benchmark
from symquant.ground import FiniteInstance, GroundClause, Literal, build_instance
from symquant.spec import ProtocolSpec


def _solver_cmd() -> str | None:
    configured = os.environ.get("SYMQUANT_SOLVER_CMD")
    if configured:
        return configured
    if shutil.which("z3"):
        return "z3 -in"
    return None


@pytest.fixture
def solver_cmd() -> str:
    """Solver command line; tests needing a solver are skipped without one."""
    cmd = _solver_cmd()
    if cmd is None:
        pytest.skip("no SMT-LIB2 solver: install z3 or set SYMQUANT_SOLVER_CMD")
    return cmd


@pytest.fixture
def solver_config(solver_cmd: str) -> RunConfig:
    return RunConfig(solver_cmd=solver_cmd, timeout=300, oracle_check=True)


@pytest.fixture(scope="session")
def toy_spec() -> ProtocolSpec:
    return load_benchmark("toy_consensus").spec


@pytest.fixture(scope="session")
def lock_spec() -> ProtocolSpec:
    return load_benchmark("lock_server").spec


@pytest.fixture(scope="session")
def toy_3x3(toy_spec: ProtocolSpec) -> FiniteInstance:
    """Toy consensus with three nodes and three values."""
    return build_instance(toy_spec, {"node": 3, "value": 3})


@pytest.fixture(scope="session")
def toy_2x2(toy_spec: ProtocolSpec) -> FiniteInstance:
    return build_instance(toy_spec, {"node": 2, "value": 2})


# Small sizes per bundled benchmark: every sort at most 4, groups cheap to enumerate.
SMALL_SIZES: dict[str, dict[str, int]] = {
    "toy_consensus": {"node": 3, "value": 3},
    "lock_server": {"client": 3, "server": 2},
    "two_phase_commit": {"node": 3},
    "decentralized_lock": {"node": 3},
    "simple_election": {"acceptor": 3, "proposer": 2},
}


def _random_clause(inst: FiniteInstance, rng: random.Random, max_literals: int = 3) -> GroundClause:
    k = rng.randint(1, min(max_literals, len(inst.state_atoms)))
    atoms = rng.sample(inst.state_atoms, k)
    return GroundClause(Literal(atom, rng.random() < 0.5) for atom in atoms)


def _random_state(inst: FiniteInstance, rng: random.Random) -> list[bool]:
    return [rng.random() < 0.5 for _ in range(inst.num_state_vars)]


@pytest.fixture
def random_clause() -> Callable[..., GroundClause]:
    """Sampler of clauses over distinct state atoms with random polarities."""
    return _random_clause


@pytest.fixture
def random_state() -> Callable[[FiniteInstance, random.Random], list[bool]]:
    return _random_state


@pytest.fixture(scope="session", params=sorted(SMALL_SIZES))
def small_instance(request: pytest.FixtureRequest) -> FiniteInstance:
    """Each bundled benchmark at its small sizes."""
    spec = load_benchmark(request.param).spec
    return build_instance(spec, SMALL_SIZES[request.param])
