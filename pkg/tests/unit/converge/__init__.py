"""Unit tests for size scheduling and run results."""
