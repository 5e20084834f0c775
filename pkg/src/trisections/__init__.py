"""Diagrammatic calculus for trisections of smooth 4-manifolds."""

__version__ = "0.1.0"
