"""Exact computations around the mirror of Fermat-type hypersurfaces."""

__version__ = "0.1.0"
