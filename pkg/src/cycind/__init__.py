"""Cycle indices of the finite classical groups, in exact arithmetic."""

__version__ = '0.1.0'
