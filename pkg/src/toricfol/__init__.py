"""Exact Cox-coordinate calculus for split foliations on toric varieties."""

__version__ = "0.1.0"
