"""Exact rational scalars.

All arithmetic in the package runs over ``fractions.Fraction``; this module
only holds the conversion and formatting helpers shared by the other modules.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose: silently importing binary rounding
    errors into exact computations is never what the caller wants.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_rational(q: Fraction) -> str:
    """``"p"`` for integers, ``"p/q"`` otherwise."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
