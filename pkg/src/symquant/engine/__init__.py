"""Incremental induction with symmetry-boosted quantified learning."""

from .frames import EngineStats, Frame, InductiveInvariant, TraceCex
from .symic3 import SymIC3

__all__ = ["EngineStats", "Frame", "InductiveInvariant", "SymIC3", "TraceCex"]
