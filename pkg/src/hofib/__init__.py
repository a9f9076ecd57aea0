"""Finite bicategories, comma constructions, nerves and crossed modules."""

__version__ = "0.1.0"
