"""Symmetry groups of finite instances, γ-images, logical orbits and partitions."""

from .orbit import Partition, logical_orbit, occurring_constants, partition
from .permutation import Permutation, SymmetryGroup, apply

__all__ = [
    "Partition",
    "Permutation",
    "SymmetryGroup",
    "apply",
    "logical_orbit",
    "occurring_constants",
    "partition",
]
