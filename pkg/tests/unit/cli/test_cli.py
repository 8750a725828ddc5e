"""Unit tests for argument handling and exit codes that need no solver."""

import argparse

import pytest

from symquant.cli import (
    EXIT_SAFE,
    EXIT_USAGE,
    TEST_HOOKS_ENV,
    build_parser,
    main,
    parse_sizes,
)
from symquant.config import RunConfig


@pytest.fixture(autouse=True)
def no_solver(monkeypatch) -> None:
    """Hide any solver configured in the environment."""
    monkeypatch.delenv("SYMQUANT_SOLVER_CMD", raising=False)
    monkeypatch.delenv(TEST_HOOKS_ENV, raising=False)


class TestParseSizes:
    """Test the --size argument."""

    def test_pairs(self) -> None:
        """Test a comma-separated assignment."""
        assert parse_sizes("node=3,value=2") == {"node": 3, "value": 2}

    def test_spaces(self) -> None:
        """Test that whitespace around items is ignored."""
        assert parse_sizes(" node = 3 , value=2 ") == {"node": 3, "value": 2}

    @pytest.mark.parametrize("text", ["node", "=3", "node=x", ""])
    def test_invalid(self, text: str) -> None:
        """Test malformed assignments."""
        with pytest.raises(argparse.ArgumentTypeError):
            parse_sizes(text)


class TestParser:
    """Test the argument parser."""

    def test_verify_options(self) -> None:
        """Test that verify collects its options."""
        args = build_parser().parse_args(
            ["-v", "verify", "toy_consensus", "--size", "node=3,value=3", "--timeout", "30"]
        )
        assert args.command == "verify"
        assert args.size == {"node": 3, "value": 3}
        assert args.timeout == 30.0
        assert args.verbose
        assert args.oracle_check is None

    def test_flags_default_to_unset(self) -> None:
        """Test that boolean flags leave the configuration defaults alone."""
        args = build_parser().parse_args(["verify", "toy_consensus"])
        assert args.antecedent_reduction is None
        assert args.epr_reduction is None
        assert args.check_unbounded is None
        assert args.prune_invariant is None

    def test_no_prune(self) -> None:
        """Test that --no-prune turns pruning off over an enabled default."""
        args = build_parser().parse_args(["verify", "toy_consensus", "--no-prune"])
        assert args.prune_invariant is False
        assert RunConfig().prune_invariant


class TestMain:
    """Test exit codes of runs that stop before any solving."""

    def test_list(self, capsys) -> None:
        """Test listing the bundled benchmarks."""
        assert main(["list"]) == EXIT_SAFE
        out = capsys.readouterr().out
        assert "toy_consensus" in out
        assert "node=2,value=2" in out

    def test_no_command(self) -> None:
        """Test that a subcommand is required."""
        assert main([]) == EXIT_USAGE

    def test_bad_size(self) -> None:
        """Test that malformed sizes are a usage error."""
        assert main(["verify", "toy_consensus", "--size", "node"]) == EXIT_USAGE

    def test_missing_solver(self, capsys) -> None:
        """Test that running without a solver command is a configuration error."""
        assert main(["verify", "toy_consensus"]) == EXIT_USAGE
        assert "no solver command" in capsys.readouterr().err

    def test_unknown_spec(self, capsys) -> None:
        """Test that a missing file that is not a benchmark is reported."""
        assert main(["verify", "no_such_protocol", "--solver-cmd", "z3 -in"]) == EXIT_USAGE
        assert "neither a file nor a bundled benchmark" in capsys.readouterr().err

    def test_syntax_error(self, tmp_path, capsys) -> None:
        """Test that an unreadable spec file is a usage error."""
        path = tmp_path / "broken.spec"
        path.write_text("(sort node\n", encoding="utf-8")
        assert main(["verify", str(path), "--solver-cmd", "z3 -in"]) == EXIT_USAGE
        assert "line" in capsys.readouterr().err

    def test_mutate_needs_test_hooks(self, capsys) -> None:
        """Test that the mutation hook is refused outside test runs."""
        argv = ["verify", "toy_consensus", "--solver-cmd", "z3 -in", "--mutate", "drop-guard=CastVote"]
        assert main(argv) == EXIT_USAGE
        assert TEST_HOOKS_ENV in capsys.readouterr().err

    def test_mutate_unknown_action(self, monkeypatch, capsys) -> None:
        """Test that mutating an unknown action is a usage error."""
        monkeypatch.setenv(TEST_HOOKS_ENV, "1")
        argv = ["verify", "toy_consensus", "--solver-cmd", "z3 -in", "--mutate", "drop-guard=Vote"]
        assert main(argv) == EXIT_USAGE
        assert "no action named Vote" in capsys.readouterr().err

    def test_size_for_unknown_sort(self, capsys) -> None:
        """Test that sizes naming an undeclared sort are a usage error."""
        argv = ["verify", "toy_consensus", "--solver-cmd", "z3 -in", "--size", "node=2,peer=2"]
        assert main(argv) == EXIT_USAGE
        assert "peer" in capsys.readouterr().err
