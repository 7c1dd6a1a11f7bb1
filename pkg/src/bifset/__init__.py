"""Continued-fraction bifurcation sets and dimension estimates."""

__version__ = "1.0.0"
