"""Exact rational scalars and planar vectors under the l1 norm.

Every quantity in this package (coordinates, lengths, areas) is a
``fractions.Fraction``, so all comparisons and equalities are decided exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


class BothZeroError(ValueError):
    """gcd(0, 0) is undefined."""


def parse_rational(text: str) -> Fraction:
    """Parse "n" or "n/d" with an optional sign.

    Rejects anything outside that grammar (floats, exponents, empty or zero
    denominators) with ValueError.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(value: Fraction) -> str:
    """Canonical text form, "n" or "n/d" with d > 0."""
    return str(value)


@dataclass(frozen=True)
class Vec2:
    """Planar vector with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scaled(self, t) -> "Vec2":
        t = Fraction(t)
        return Vec2(self.x * t, self.y * t)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


class Quadrant(Enum):
    """Sign classes for the coordinate product: Q1 is closed, Q2 strictly open."""

    Q1 = "q1"  # x*y >= 0, axes included
    Q2 = "q2"  # x*y < 0


def l1_norm(v: Vec2) -> Fraction:
    return abs(v.x) + abs(v.y)


def quadrant_of(v: Vec2) -> Quadrant:
    return Quadrant.Q1 if v.x * v.y >= 0 else Quadrant.Q2


def rat_gcd(a, b) -> Fraction:
    """Largest positive rational g with a and b both integer multiples of g.

    rat_gcd(a, 0) = |a|.  For a = n1/d1 and b = n2/d2 in lowest terms the
    result is gcd(n1*d2, n2*d1) / (d1*d2).
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 and b == 0:
        raise BothZeroError("gcd(0, 0) is undefined")
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )
