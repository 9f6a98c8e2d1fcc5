"""Exact invariant computations for locally conformally symplectic Lie algebras."""

__version__ = "0.1.0"
