"""Unit tests for engine data types."""
