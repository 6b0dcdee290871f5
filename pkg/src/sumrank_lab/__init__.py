"""Orthogonal-group MRD and sum-rank metric codes over small odd-characteristic fields."""

__version__ = "0.1.0"
