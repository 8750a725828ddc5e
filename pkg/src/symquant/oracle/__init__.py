"""Brute-force explicit-state checking of tiny instances."""

from .explicit import (
    MAX_ORACLE_VARS,
    ExplicitCheck,
    ReplayResult,
    StateSpace,
    bfs_reach,
    check_invariant_explicit,
    decode,
    encode,
    replay,
)

__all__ = [
    "MAX_ORACLE_VARS",
    "ExplicitCheck",
    "ReplayResult",
    "StateSpace",
    "bfs_reach",
    "check_invariant_explicit",
    "decode",
    "encode",
    "replay",
]
