"""Exact discriminants of wave-front singularity maps."""

__version__ = "0.1.0"
