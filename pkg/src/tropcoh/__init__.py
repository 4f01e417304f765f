"""Exact combinatorics of tropical curves dual to subdivided lattice polygons."""

__version__ = "0.1.0"
