"""Unit tests for quantifier inference."""
