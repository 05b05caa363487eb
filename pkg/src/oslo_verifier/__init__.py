"""Mechanical, desk-scale verification of six olympiad problems."""

__version__ = "0.1.0"
