"""Differential Thomas decomposition and Lagrangian constraint analysis."""

__version__ = "0.1.0"
