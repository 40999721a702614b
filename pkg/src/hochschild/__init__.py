"""Exact computations of Hochschild (co)homology and the operations on it."""

__version__ = "0.1.0"
