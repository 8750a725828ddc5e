"""End-to-end tests that drive an SMT solver."""
