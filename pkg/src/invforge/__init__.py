"""Invariant rings of orthogonal and symplectic groups over F2."""

__version__ = "0.1.0"
