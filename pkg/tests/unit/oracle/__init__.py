"""Unit tests for the explicit-state oracle."""
