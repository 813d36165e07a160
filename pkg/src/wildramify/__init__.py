"""Exact algebra for Artin-Schreier-Witt sheaves, Swan conductors and wild ramification."""

__version__ = "0.1.0"
