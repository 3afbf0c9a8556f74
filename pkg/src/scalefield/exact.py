"""Exact scalar arithmetic for scaled number structures.

Rational and real-kind quantities are plain ``fractions.Fraction`` values.
Real-kind inputs given as decimal strings are parsed through ``decimal`` at a
configurable precision (finite decimals are exact rationals, so nothing is
lost downstream).  Complex quantities are pairs of Fractions with exact
field arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero

#: Significant digits used when parsing real-kind decimal input.
DEFAULT_REAL_DIGITS = 50


@dataclass(frozen=True, eq=False)
class ComplexFraction:
    """A complex number with exact rational components."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ComplexFraction):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (Fraction, int)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "ComplexFraction":
        return ComplexFraction(self.re, -self.im)

    def __add__(self, other: "Scalar") -> "ComplexFraction":
        o = as_complex(other)
        return ComplexFraction(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "ComplexFraction":
        return ComplexFraction(-self.re, -self.im)

    def __sub__(self, other: "Scalar") -> "ComplexFraction":
        return self + (-as_complex(other))

    def __rsub__(self, other: "Scalar") -> "ComplexFraction":
        return as_complex(other) + (-self)

    def __mul__(self, other: "Scalar") -> "ComplexFraction":
        o = as_complex(other)
        return ComplexFraction(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "ComplexFraction":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("reciprocal of zero")
        return ComplexFraction(self.re / n, -self.im / n)

    def __truediv__(self, other: "Scalar") -> "ComplexFraction":
        return self * as_complex(other).reciprocal()

    def __rtruediv__(self, other: "Scalar") -> "ComplexFraction":
        return as_complex(other) * self.reciprocal()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = Union[Fraction, int, ComplexFraction]


def as_complex(x: Scalar) -> ComplexFraction:
    if isinstance(x, ComplexFraction):
        return x
    return ComplexFraction(Fraction(x))


def scalar_is_zero(x: Scalar) -> bool:
    if isinstance(x, ComplexFraction):
        return x.is_zero
    return x == 0


def scalar_is_real(x: Scalar) -> bool:
    if isinstance(x, ComplexFraction):
        return x.is_real
    return True


def scalar_conj(x: Scalar) -> Scalar:
    if isinstance(x, ComplexFraction):
        return x.conjugate()
    return x


def scalar_reciprocal(x: Scalar) -> Scalar:
    if isinstance(x, ComplexFraction):
        return x.reciprocal()
    if x == 0:
        raise DivisionByZero("reciprocal of zero")
    return 1 / Fraction(x)


def real_part(x: Scalar) -> Fraction:
    if isinstance(x, ComplexFraction):
        return x.re
    return Fraction(x)


def scalar_to_complex(x: Scalar) -> complex:
    if isinstance(x, ComplexFraction):
        return complex(x)
    return complex(float(x), 0.0)


def real_fraction(value: Union[str, float, int, Fraction, Decimal],
                  digits: int = DEFAULT_REAL_DIGITS) -> Fraction:
    """Parse a real-kind payload into an exact Fraction.

    Strings and floats go through ``decimal`` rounded to ``digits``
    significant digits; Fractions and ints pass through exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(value, Decimal):
            d = +value
        elif isinstance(value, float):
            d = +Decimal(repr(value))
        else:
            d = +Decimal(str(value))
    return Fraction(d)


def parse_fraction(text: str) -> Fraction:
    """Parse "A/B" or a plain integer/decimal string into a Fraction."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num.strip()), int(den.strip()))
    if "." in s or "e" in s or "E" in s:
        return Fraction(Decimal(s))
    return Fraction(int(s))
