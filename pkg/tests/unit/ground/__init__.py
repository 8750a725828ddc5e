"""Unit tests for finite instances."""
