"""Exact computations with the Arnold ring, the Poisson operad and the
gravity operad."""

__version__ = "0.1.0"
