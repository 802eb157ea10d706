"""Arbitrary-order averaging for zero-Hopf bifurcations of polynomial systems."""
__version__ = "0.1.0"
