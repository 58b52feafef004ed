"""Probabilistic analysis of the GHZ scheme with setting-dependent hidden variables."""

__version__ = "0.1.0"
