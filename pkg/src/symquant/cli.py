"""Command line: ``symquant verify`` and ``symquant list``.

Exit codes: 0 safe, 1 violated, 2 usage or configuration error, 3 resources
exhausted or solver/engine failure.
"""

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from .config import RunConfig
from .converge import (
    ResourcesExhausted,
    Safe,
    Verdict,
    Violated,
    default_sizes,
    run,
    verdict_result,
    write_certificate,
    write_result,
)
from .corpus import drop_guard, list_benchmarks, load_benchmark
from .errors import (
    EngineError,
    InstanceError,
    ResourceLimitError,
    SolverError,
    SpecError,
    SpecSyntaxError,
)
from .ground.instance import build_instance
from .spec import ProtocolSpec, load_spec

logger = logging.getLogger(__name__)

EXIT_SAFE = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_FAILURE = 3

TEST_HOOKS_ENV = "SYMQUANT_TEST_HOOKS"


def parse_sizes(text: str) -> dict[str, int]:
    """``node=3,value=3`` as a dict."""
    sizes: dict[str, int] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        sort, eq, value = item.partition("=")
        if not eq or not sort.strip():
            raise argparse.ArgumentTypeError(f"expected sort=size, got {item!r}")
        try:
            sizes[sort.strip()] = int(value)
        except ValueError:
            message = f"size of {sort.strip()} is not an integer"
            raise argparse.ArgumentTypeError(message) from None
    if not sizes:
        raise argparse.ArgumentTypeError("no sizes given")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symquant",
        description="Symmetry-boosted incremental induction for parameterized protocols",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("list", help="list the bundled benchmarks")

    verify = commands.add_parser("verify", help="verify a protocol for every size")
    verify.add_argument("spec", help="path to a .spec file or a bundled benchmark name")
    verify.add_argument("--size", type=parse_sizes, help="base sizes, e.g. node=3,value=3")
    verify.add_argument("--max-vars", type=int, help="largest instance, in ground state variables")
    verify.add_argument("--timeout", type=float, help="total solver seconds")
    verify.add_argument("--max-frames", type=int, help="frame budget per induction run")
    verify.add_argument("--max-ctis", type=int, help="CTI budget per induction run")
    verify.add_argument("--solver-cmd", help="SMT-LIB2 solver command reading stdin")
    verify.add_argument("--solver-seed", type=int, help="solver random seed")
    verify.add_argument("--cert", type=Path, help="write the certificate here")
    verify.add_argument("--result", type=Path, help="write the JSON result here")
    verify.add_argument("--trace", type=Path, help="write a counterexample trace here")
    verify.add_argument("--emit-unbounded", type=Path, help="write the unbounded check here")
    verify.add_argument(
        "--check-unbounded", action="store_true", default=None,
        help="run the unbounded check with the solver",
    )
    verify.add_argument(
        "--oracle-check", action="store_true", default=None,
        help="cross-check small instances by explicit enumeration",
    )
    verify.add_argument(
        "--enable-antecedent-reduction", action="store_true", default=None,
        dest="antecedent_reduction",
    )
    verify.add_argument(
        "--enable-epr-reduction", action="store_true", default=None, dest="epr_reduction"
    )
    verify.add_argument(
        "--no-prune", action="store_false", default=None, dest="prune_invariant",
        help="keep every learned predicate in the certificate",
    )
    verify.add_argument("--log-smt", type=Path, help="directory for solver transcripts")
    verify.add_argument(
        "--mutate",
        metavar="drop-guard=ACTION",
        help=argparse.SUPPRESS if os.environ.get(TEST_HOOKS_ENV) != "1" else "test hook",
    )
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "solver_cmd": args.solver_cmd,
        "solver_seed": args.solver_seed,
        "timeout": args.timeout,
        "max_frames": args.max_frames,
        "max_ctis": args.max_ctis,
        "max_vars": args.max_vars,
        "antecedent_reduction": args.antecedent_reduction,
        "epr_reduction": args.epr_reduction,
        "oracle_check": args.oracle_check,
        "check_unbounded": args.check_unbounded,
        "log_smt": args.log_smt,
        "prune_invariant": args.prune_invariant,
    }
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})


def _load(args: argparse.Namespace) -> tuple[ProtocolSpec, str, dict[str, int] | None]:
    """The protocol, its display name and its bundled base sizes, if any."""
    path = Path(args.spec)
    if path.is_file():
        spec = load_spec(path.read_text(encoding="utf-8"))
        name, base = path.stem, None
        bundled = {p.name: p for p in list_benchmarks()}
        if name in bundled:
            base = dict(bundled[name].base_sizes)
    else:
        try:
            benchmark = load_benchmark(args.spec)
        except KeyError as exc:
            raise SpecError(f"{args.spec} is neither a file nor a bundled benchmark") from exc
        spec, name, base = benchmark.spec, benchmark.name, dict(benchmark.params.base_sizes)
    if args.mutate:
        spec, name = _mutate(spec, name, args.mutate)
    return spec, name, base


def _mutate(spec: ProtocolSpec, name: str, hook: str) -> tuple[ProtocolSpec, str]:
    if os.environ.get(TEST_HOOKS_ENV) != "1":
        raise SpecError(f"--mutate needs {TEST_HOOKS_ENV}=1")
    kind, _, action = hook.partition("=")
    if kind != "drop-guard" or not action:
        raise SpecError(f"unknown mutation {hook!r}; expected drop-guard=<action>")
    try:
        return drop_guard(spec, action), f"{name}+{hook}"
    except KeyError:
        raise SpecError(f"no action named {action}") from None


def _write_trace(verdict: Violated, spec: ProtocolSpec, path: Path) -> None:
    inst = build_instance(spec, verdict.sizes)
    lines = [f"; counterexample at {inst.describe_sizes()}"]
    for step, atoms in enumerate(verdict.trace.true_atoms(inst)):
        lines.append(f"state {step}: {' '.join(atoms) or '(all false)'}")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _report(verdict: Verdict, args: argparse.Namespace, spec: ProtocolSpec, name: str) -> int:
    if args.result:
        write_result(verdict_result(verdict, spec, name), args.result)
    match verdict:
        case Safe():
            if args.cert:
                write_certificate(verdict.invariant, args.cert, name)
            sizes = ", ".join(f"{k}={v}" for k, v in verdict.cutoff.items())
            print(
                f"safe: {name} at cutoff {sizes} with "
                f"{len(verdict.invariant.strengthening)} strengthening assertions"
                f" (unbounded check: {verdict.unbounded.value})"
            )
            return EXIT_SAFE
        case Violated():
            if args.trace:
                _write_trace(verdict, spec, args.trace)
            print(f"violated: {name}, counterexample of {len(verdict.trace)} states")
            return EXIT_VIOLATED
        case ResourcesExhausted():
            print(f"resources exhausted: {verdict.reason}")
            return EXIT_FAILURE
    raise TypeError(f"not a verdict: {verdict!r}")


def _verify(args: argparse.Namespace) -> int:
    try:
        config = _config(args)
        spec, name, base = _load(args)
        if not config.solver_cmd:
            raise SpecError("no solver command: pass --solver-cmd or set SYMQUANT_SOLVER_CMD")
        sizes = args.size or base or default_sizes(spec)
    except (SpecError, SpecSyntaxError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logger.info("verifying %s from sizes %s", name, sizes)
    try:
        verdict = run(spec, sizes, config, args.emit_unbounded)
        return _report(verdict, args, spec, name)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, SolverError, EngineError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def _list() -> int:
    for params in list_benchmarks():
        sizes = ",".join(f"{k}={v}" for k, v in params.base_sizes.items())
        print(f"{params.name:<20} {sizes:<24} {params.description}")
    return EXIT_SAFE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args)
    if args.command == "list":
        return _list()
    return _verify(args)


if __name__ == "__main__":
    sys.exit(main())
