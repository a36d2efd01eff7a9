"""Burrows-Wheeler run counts of circular binary words and their reverses."""

__version__ = "0.1.0"
