"""Unit tests for invariant checks."""
