"""Unit tests for the protocol language."""
