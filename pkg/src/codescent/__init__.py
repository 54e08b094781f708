"""Exact computations for comonadic and classical descent on module categories."""

__version__ = "0.1.0"
