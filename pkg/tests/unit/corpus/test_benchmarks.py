"""Unit tests for loading and mutating bundled benchmarks."""

import pytest
from pydantic import ValidationError

from symquant.converge import state_var_count
from symquant.corpus import (
    BenchmarkParams,
    MutatedBenchmark,
    drop_guard,
    list_benchmarks,
    load_benchmark,
)
from symquant.spec import TRUE, typecheck

NAMES = [p.name for p in list_benchmarks()]


class TestBenchmarkParams:
    """Test benchmark descriptions."""

    def test_empty_name(self) -> None:
        """Test that a benchmark needs a name."""
        with pytest.raises(ValidationError):
            BenchmarkParams(name="", base_sizes={"node": 2})


class TestBundledBenchmarks:
    """Test the shipped protocols."""

    def test_listing(self) -> None:
        """Test the bundled benchmark names."""
        assert NAMES == [
            "toy_consensus",
            "lock_server",
            "two_phase_commit",
            "decentralized_lock",
            "simple_election",
        ]

    @pytest.mark.parametrize("name", NAMES)
    def test_spec_is_valid(self, name: str) -> None:
        """Test that every bundled spec parses and typechecks."""
        spec = load_benchmark(name).spec
        assert typecheck(spec) == []

    @pytest.mark.parametrize("name", NAMES)
    def test_base_sizes_fit(self, name: str) -> None:
        """Test that base sizes name exactly the independent sorts."""
        benchmark = load_benchmark(name)
        independent = {s.name for s in benchmark.spec.independent_sorts}
        assert set(benchmark.params.base_sizes) == independent
        assert state_var_count(benchmark.spec, benchmark.params.base_sizes) > 0

    def test_dashes_accepted(self) -> None:
        """Test that dashes and underscores are interchangeable."""
        assert load_benchmark("toy-consensus").name == "toy_consensus"

    def test_unknown(self) -> None:
        """Test that unknown names list the known benchmarks."""
        with pytest.raises(KeyError, match="known: toy_consensus"):
            load_benchmark("paxos")

    def test_repr(self) -> None:
        """Test the benchmark representation."""
        assert repr(load_benchmark("decentralized_lock")) == (
            "BundledBenchmark('decentralized_lock', base_sizes={'node': 2})"
        )


class TestDropGuard:
    """Test the unsafe-variant mutation."""

    def test_guard_replaced(self, toy_spec) -> None:
        """Test that only the named action loses its guard."""
        mutant = drop_guard(toy_spec, "CastVote")
        assert mutant.action("CastVote").guard == TRUE
        assert mutant.action("Decide") == toy_spec.action("Decide")
        assert toy_spec.action("CastVote").guard != TRUE

    def test_unknown_action(self, toy_spec) -> None:
        """Test that the action must exist."""
        with pytest.raises(KeyError):
            drop_guard(toy_spec, "Vote")

    def test_mutated_benchmark(self) -> None:
        """Test the name and spec of a mutated benchmark."""
        mutant = MutatedBenchmark(load_benchmark("toy_consensus"), "Decide")
        assert mutant.name == "toy_consensus+drop-guard=Decide"
        assert mutant.spec.action("Decide").guard == TRUE
