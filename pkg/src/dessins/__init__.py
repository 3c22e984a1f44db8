"""Dessins d'enfants of type (3, 2, p): enumeration, monodromy groups and counts."""

__version__ = "0.1.0"
