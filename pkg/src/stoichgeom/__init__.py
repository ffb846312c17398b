"""Exact stoichiometric geometry: balancing, redox and mechanism analysis."""

__version__ = "0.1.0"
