"""Exact fan calculus for terminal prime-index Brauer pairs on arithmetic surfaces."""

__version__ = "0.1.0"
