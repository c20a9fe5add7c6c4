"""Exact combinatorics and linear algebra for type-A quiver representation
varieties: partition calculus, prime-field matrices, ab-diagrams, points of
the chain relation variety, and desk-scale verification drivers."""

from quiverz import abdiagrams, exactmat, partitions, quiverrep, verify

__all__ = ["partitions", "exactmat", "abdiagrams", "quiverrep", "verify"]
__version__ = "0.1.0"
