"""Symmetry-boosted IC3 verification of parameterized distributed protocols.

Proves safety of protocols over unbounded sorts by running incremental
induction on small finite instances, lifting learned clauses to quantified
predicates through their symmetry orbits, and growing the instance until
the invariant passes the size+1 convergence checks.
"""

__version__ = "0.1.0"
