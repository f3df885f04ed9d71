"""Slope lengths, filling certificates and pinched solid-torus metrics."""

__version__ = "0.1.0"
