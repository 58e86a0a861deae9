"""
Exceptions raised by vanishing_averages
"""

from __future__ import annotations


class InvalidInputError(ValueError):
    """
    A precondition of an operation is violated by its input
    (arity or length mismatch, alpha incompatible with the resolution,
    coordinates out of range, ...)
    """
