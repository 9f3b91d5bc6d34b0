"""Exact umbral calculus: formal power series, Sheffer sequences and identity checks."""

__version__ = "0.1.0"
