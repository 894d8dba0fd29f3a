"""Exact computations with nilpotent Leibniz superalgebras of maximal nilindex."""

__version__ = "0.1.0"
