"""Affine noncrossing partitions of types D and B via affine signed permutations."""
from .affperm import AffPerm, BarredPerm, PermError, Token, loop, reflection

__all__ = ["AffPerm", "BarredPerm", "PermError", "Token", "loop", "reflection"]
