"""Springer's poset V, twisted Bruhat orders and their R- and KL-polynomials."""

__version__ = "0.1.0"
