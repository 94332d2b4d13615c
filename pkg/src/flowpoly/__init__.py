"""Exact computations on flow polytopes and Morris-type constant terms."""

__version__ = "0.1.0"
