"""Equivariant simplicial complexes: build, transform and verify."""

__version__ = "0.1.0"
