"""Obstruction sieve for deformation problems of newforms with integer eigenvalues."""

__version__ = "0.1.0"
