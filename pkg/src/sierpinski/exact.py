"""Exact scalars: rationals, dyadic helpers and the field Q(sqrt 3).

Every headline constant of the gasket (areas, inradii, heights) has the form
``a + b*sqrt(3)`` with rational ``a`` and ``b``, so :class:`QSqrt3` keeps those
values exact and only produces a float on request.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

SQRT3 = math.sqrt(3.0)

Number = Union[int, Fraction, float]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, floats and ``"p/q"`` strings to a Fraction.

    Floats convert exactly (every finite float is a dyadic rational).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def format_rational(q: Fraction) -> str:
    """Format as ``p/2^k`` when dyadic, else ``p/q``."""
    q = Fraction(q)
    if is_dyadic(q):
        return f"{q.numerator}/2^{q.denominator.bit_length() - 1}"
    return f"{q.numerator}/{q.denominator}"


_POW2 = re.compile(r"^\s*([+-]?\d+)\s*/\s*2\^(\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts ``p/q`` and decimals."""
    m = _POW2.match(text)
    if m:
        return Fraction(int(m.group(1)), 2 ** int(m.group(2)))
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QSqrt3:
    """Number ``a + b*sqrt(3)`` with rational ``a`` and ``b``.

    Comparisons are exact. Mixed arithmetic with ints and Fractions stays
    exact; mixing with floats degrades to float.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = as_fraction(a)
        self.b = as_fraction(b)

    @staticmethod
    def _lift(other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt3(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) + other
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) - other
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) * other
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt3":
        return QSqrt3(self.a, -self.b)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) / other
        norm = o.a * o.a - 3 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        num = self * o.conjugate()
        return QSqrt3(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return other / float(self)
        return o / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        diff = self.a * self.a - 3 * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def _cmp(self, other) -> int:
        o = self._lift(other)
        if o is None:
            f, g = float(self), float(other)
            return (f > g) - (f < g)
        return (self - o).sign()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented if not isinstance(other, float) else float(self) == other
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT3

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = "sqrt3" if self.b == 1 else f"({self.b})*sqrt3"
        return root if self.a == 0 else f"{self.a} + {root}"

    def to_json(self) -> dict:
        return {
            "rational": f"{self.a.numerator}/{self.a.denominator}",
            "sqrt3_coeff": f"{self.b.numerator}/{self.b.denominator}",
            "float": float(self),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QSqrt3":
        return cls(parse_rational(obj["rational"]), parse_rational(obj["sqrt3_coeff"]))


SQRT3_OVER_6 = QSqrt3(0, Fraction(1, 6))

_SURD = re.compile(
    r"^\s*(?:(?P<coef>[0-9]+(?:/[0-9]+)?|[0-9]*\.[0-9]+)\s*\*\s*)?sqrt\(?3\)?\s*(?:/\s*(?P<den>[0-9]+))?\s*$"
)


def parse_number(text: str):
    """Parse ``p/q``, a decimal, or a ``k*sqrt3/m`` token.

    Returns a Fraction for rational input and a :class:`QSqrt3` otherwise.
    """
    m = _SURD.match(text)
    if m:
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        den = int(m.group("den")) if m.group("den") else 1
        return QSqrt3(0, coef / den)
    return parse_rational(text)


def to_json_value(value) -> dict | float:
    """Serialize an exact scalar as the rational/sqrt3/float triple."""
    if isinstance(value, QSqrt3):
        return value.to_json()
    if isinstance(value, (int, Fraction)):
        return QSqrt3(value).to_json()
    return float(value)
