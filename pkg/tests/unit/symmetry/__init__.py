"""Unit tests for symmetry groups and orbits."""
