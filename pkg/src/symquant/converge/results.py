"""Result documents and proof certificates written at the end of a run."""

import logging
from pathlib import Path

from pydantic import BaseModel, Field

from ..engine.frames import InductiveInvariant

logger = logging.getLogger(__name__)


class RunStats(BaseModel):
    """Totals over every induction run of one verification."""

    frames: int = Field(default=0, ge=0)
    ctis: int = Field(default=0, ge=0)
    learned: int = Field(default=0, ge=0)
    reused: int = Field(default=0, ge=0)
    pruned: int = Field(default=0, ge=0)
    smt_queries: int = Field(default=0, ge=0)
    smt_seconds: float = Field(default=0.0, ge=0)
    wall_seconds: float = Field(default=0.0, ge=0)
    induction_runs: int = Field(default=0, ge=0)


class RunResult(BaseModel):
    """Everything a run reports, serialized as the JSON result file."""

    verdict: str = Field(description="safe, violated or resources-exhausted")
    benchmark: str | None = None
    sizes_history: list[dict[str, int]] = Field(default_factory=list)
    cutoff_sizes: dict[str, int] | None = None
    certificate: str | None = None
    strengthening: list[str] = Field(default_factory=list)
    counterexample: list[list[str]] | None = Field(
        default=None, description="true state atoms, one list per state"
    )
    reason: str | None = None
    unbounded_check: str | None = None
    oracle_check: str | None = None
    stats: RunStats = Field(default_factory=RunStats)


def format_certificate(inv: InductiveInvariant, benchmark: str | None = None) -> str:
    """Strengthening assertions in spec formula syntax, one per line, after a comment header."""
    sizes = ", ".join(f"{k}={v}" for k, v in inv.sizes.items())
    lines = [
        f"; benchmark: {benchmark or 'unnamed'}",
        f"; cutoff sizes: {sizes}",
        f"; strengthening assertions: {len(inv.strengthening)}",
    ]
    lines.extend(p.text() for p in inv.strengthening)
    return "\n".join(lines) + "\n"


def write_certificate(
    inv: InductiveInvariant, path: Path, benchmark: str | None = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_certificate(inv, benchmark), encoding="utf-8")
    logger.info("certificate written to %s", path)
    return path


def write_result(result: RunResult, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(result.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("result written to %s", path)
    return path
