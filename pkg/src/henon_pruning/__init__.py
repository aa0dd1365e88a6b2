"""Pruned-horseshoe symbolic dynamics and Henon-map verification toolkit."""

__version__ = "0.1.0"
