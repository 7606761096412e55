"""Symmetrized deleted joins, discrete Morse matchings and collective unavoidability."""

__version__ = "0.1.0"
