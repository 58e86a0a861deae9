"""
Exact scalars: rationals and rational-complex numbers
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Union

from vanishing_averages.errors import InvalidInputError

RATIONAL_PATTERN = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")

Scalar = Union[int, Fraction, "RationalComplex"]


def parse_rational(text: str) -> Fraction:
    """
    Parse a "p/q" or "p" string into a Fraction in lowest terms

    >>> parse_rational("2/4")
    Fraction(1, 2)
    >>> parse_rational("-3")
    Fraction(-3, 1)
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    match = RATIONAL_PATTERN.match(str(text))
    if not match:
        raise InvalidInputError(f"not a rational number: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InvalidInputError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def parse_rational_list(text: str) -> List[Fraction]:
    """
    Parse a comma separated list of rationals, e.g. "1/3,2/3"

    >>> parse_rational_list("1/3, 2/3")
    [Fraction(1, 3), Fraction(2, 3)]
    """
    parts = [part for part in str(text).split(",") if part.strip()]
    if not parts:
        raise InvalidInputError(f"empty rational list: {text!r}")
    return [parse_rational(part) for part in parts]


def format_rational(value: Fraction) -> str:
    """
    Lowest-terms "p/q" string, integers without denominator

    >>> format_rational(Fraction(6, 4))
    '3/2'
    >>> format_rational(Fraction(5))
    '5'
    """
    return str(Fraction(value))


class RationalComplex:
    """
    Immutable complex number with exact rational real and imaginary parts
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "_re", parse_rational(re))
        object.__setattr__(self, "_im", parse_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("RationalComplex is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def of(cls, value: Scalar) -> "RationalComplex":
        """
        Coerce an int, Fraction, "p/q" string or RationalComplex
        """
        if isinstance(value, RationalComplex):
            return value
        if isinstance(value, bool) or isinstance(value, float):
            raise InvalidInputError(f"inexact or boolean scalar: {value!r}")
        return cls(value, 0)

    def is_zero(self) -> bool:
        return self._re == 0 and self._im == 0

    def is_real(self) -> bool:
        return self._im == 0

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self._re, -self._im)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _raw(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _raw(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _raw(
            self._re * other._re - self._im * other._im,
            self._re * other._im + self._im * other._re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        norm = other._re * other._re + other._im * other._im
        if norm == 0:
            raise ZeroDivisionError("division by exact zero")
        return _raw(
            (self._re * other._re + self._im * other._im) / norm,
            (self._im * other._re - self._re * other._im) / norm,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self) -> "RationalComplex":
        return _raw(-self._re, -self._im)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self) -> str:
        return f"RationalComplex({format_rational(self._re)!r}, {format_rational(self._im)!r})"

    def __str__(self) -> str:
        if self._im == 0:
            return format_rational(self._re)
        sign = "+" if self._im >= 0 else "-"
        return f"{format_rational(self._re)}{sign}{format_rational(abs(self._im))}i"


def _raw(re: Fraction, im: Fraction) -> RationalComplex:
    number = object.__new__(RationalComplex)
    object.__setattr__(number, "_re", re)
    object.__setattr__(number, "_im", im)
    return number


def _coerce(value) -> Union[RationalComplex, None]:
    if isinstance(value, RationalComplex):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return _raw(Fraction(value), Fraction(0))
    return None


ZERO = RationalComplex(0)
ONE = RationalComplex(1)
