"""Numerical laboratory for U(n) Seiberg-Witten monopole equations on T^4."""

__version__ = "0.1.0"
