"""Explicit-state model checker for a small process algebra and a modal
mu-calculus with data."""

__version__ = "0.1.0"
