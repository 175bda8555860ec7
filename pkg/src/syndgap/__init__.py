"""Syndrome-space proximity gaps and correlated agreement for random linear codes."""
__version__ = "0.1.0"
