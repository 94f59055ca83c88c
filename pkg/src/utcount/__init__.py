"""Supercharacter constituent counting for unitriangular groups."""

__version__ = "0.1.0"
