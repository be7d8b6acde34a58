"""Finite Weyl groups, root data, braid monoids and torsion points of tori."""

__version__ = "0.1.0"
