"""Computational checks for modular representations of sl(n) and crystalline differential operators."""

__version__ = "0.1.0"
