"""Acyclic edge-coloring of plane graphs with large maximum degree."""

__version__ = "0.1.0"
