"""Exact volumes of zonotopes generated by a matrix pair {A, B}."""

__version__ = "1.0.0"
