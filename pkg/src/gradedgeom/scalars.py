"""Scalar fields for coefficient arithmetic.

Two fields are supported: the rationals (``fractions.Fraction``) and the
Gaussian rationals Q(i), used when complexified objects are needed.  All
algebraic code is scalar-agnostic; it only relies on ring operations and
exact equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union


class GaussianRational:
    """An element a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}+{self.im}*i)"


I = GaussianRational(0, 1)

Scalar = Union[Fraction, GaussianRational]

RATIONAL = "rational"
GAUSSIAN = "gaussian"


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


def scalar_from(field: str, value) -> Scalar:
    """Coerce ``value`` into the given scalar field."""
    if field == GAUSSIAN:
        return _coerce(value)
    if isinstance(value, GaussianRational):
        if value.im != 0:
            raise ValueError("cannot coerce a complex scalar into the rationals")
        return value.re
    return Fraction(value)


def scalar_to_json(value) -> dict:
    if isinstance(value, GaussianRational):
        out = {"num": value.re.numerator, "den": value.re.denominator}
        if value.im != 0:
            out["inum"] = value.im.numerator
            out["iden"] = value.im.denominator
        return out
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def scalar_from_json(field: str, data: dict) -> Scalar:
    re = Fraction(int(data["num"]), int(data.get("den", 1)))
    im = Fraction(int(data.get("inum", 0)), int(data.get("iden", 1)))
    if im != 0 or field == GAUSSIAN:
        return GaussianRational(re, im)
    return re
