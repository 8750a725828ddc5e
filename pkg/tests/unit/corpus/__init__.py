"""Unit tests for the bundled benchmarks."""
