"""Exact root-system combinatorics and a spherical-subgroup classification database."""

__version__ = "0.1.0"
