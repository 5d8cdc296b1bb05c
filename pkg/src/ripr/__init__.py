"""Exact tools for image partition regularity experiments."""

__version__ = "0.1.0"
