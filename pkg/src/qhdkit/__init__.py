"""Verification toolkit for rational homology disk smoothings."""

__version__ = "0.1.0"
