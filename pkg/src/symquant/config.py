"""Run configuration.

Values come from (highest priority first) explicit keyword arguments, which
the CLI fills from its flags, then ``SYMQUANT_*`` environment variables, then
a ``.env`` file in the working directory.
"""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_MAX_GROUP_ORDER = 518_400  # 6! * 6!


class RunConfig(BaseSettings):
    """Settings for one verification run.

    Attributes:
        solver_cmd: Executable and arguments of an SMT-LIB2 solver reading stdin
        solver_seed: Random seed passed to the solver when it supports one
        timeout: Total solver wall time budget in seconds
        max_frames: Frame budget of one induction run
        max_ctis: CTI budget of one induction run
        max_vars: Largest instance (ground state variables) the schedule may build
        max_group_order: Largest symmetry group that is enumerated explicitly
        antecedent_reduction: Try dropping distinct antecedents of learned predicates
        epr_reduction: Try pushing existentials out of learned predicates
        oracle_check: Cross-check the invariant with the explicit-state oracle
        log_smt: Directory receiving one replayable transcript per solver session
        check_unbounded: Run the emitted unbounded check with the solver
        unbounded_timeout: Seconds allowed for the unbounded check
        cutoff_workers: Parallel sessions used by the cutoff checks
        symmetry_spot_checks: Random group elements tested per blocked clause
        debug_checks: Re-check relative induction of every learned predicate
        prune_invariant: Drop strengthening predicates the others keep inductive without
    """

    model_config = SettingsConfigDict(
        env_prefix="SYMQUANT_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    solver_cmd: str | None = Field(default=None, description="SMT-LIB2 solver command line")
    solver_seed: int = Field(default=1, ge=0)
    timeout: float = Field(default=600.0, gt=0)
    max_frames: int = Field(default=100, gt=0)
    max_ctis: int = Field(default=10_000, gt=0)
    max_vars: int = Field(default=4096, gt=0)
    max_group_order: int = Field(default=DEFAULT_MAX_GROUP_ORDER, gt=0)
    antecedent_reduction: bool = False
    epr_reduction: bool = False
    oracle_check: bool = False
    log_smt: Path | None = None
    check_unbounded: bool = False
    unbounded_timeout: float = Field(default=60.0, gt=0)
    cutoff_workers: int = Field(default=1, gt=0)
    symmetry_spot_checks: int = Field(default=0, ge=0)
    debug_checks: bool = False
    prune_invariant: bool = True
