"""Exact homology of bar and Galois-orbit complexes of finite groups."""

__version__ = "0.1.0"
