"""Branching machinery for the minimal representation of O(p,q)."""

__version__ = "0.1.0"
