"""Exact tools for self-affine tilings: expansion-map eigenvalue checks,
substitution rules with algebraic offsets, address maps and boundary curves."""

__version__ = "0.1.0"
