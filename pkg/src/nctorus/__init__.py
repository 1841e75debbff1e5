"""Lie bi-algebra structures on the rational, classical and non-commutative torus."""

__version__ = "0.1.0"
