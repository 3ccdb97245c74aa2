"""Exact root-level combinatorics of parabolic CR-algebras."""

__version__ = "0.1.0"
