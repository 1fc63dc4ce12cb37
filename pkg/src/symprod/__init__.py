"""Symmetric products of graded-commutative algebras over the rationals."""

__version__ = "0.1.0"
