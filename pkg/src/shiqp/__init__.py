"""Exact complement counts and characteristic quasi-polynomials for Shi arrangements of types B, C, D."""

__version__ = "0.1.0"
