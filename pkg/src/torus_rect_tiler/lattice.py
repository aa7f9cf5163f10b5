"""Planar lattice algebra: covolume, membership, bounded point enumeration,
shortest sign-class vectors, axis periods, and the minimum tiling length.

A lattice is given by an ordered basis pair {u, v} with nonzero determinant.
All searches are certified exact: enumeration bounds come from the l1 operator
norm of the inverse basis matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .exact_math import Quadrant, Vec2, l1_norm, quadrant_of, rat_gcd


class SingularBasisError(ValueError):
    """Basis vectors are linearly dependent."""


@dataclass(frozen=True)
class LatticeBasis:
    """Ordered basis {u, v} of a rank-2 lattice in the plane."""

    u: Vec2
    v: Vec2

    def __post_init__(self):
        if self.det == 0:
            raise SingularBasisError(f"singular basis: u={self.u}, v={self.v}")

    @property
    def det(self) -> Fraction:
        return self.u.x * self.v.y - self.u.y * self.v.x

    @property
    def covolume(self) -> Fraction:
        return abs(self.det)


def covolume(basis: LatticeBasis) -> Fraction:
    """Area of the fundamental parallelogram (always positive)."""
    return basis.covolume


def basis_coordinates(basis: LatticeBasis, point: Vec2) -> tuple[Fraction, Fraction]:
    """Unique rational (z1, z2) with point = z1*u + z2*v."""
    det = basis.det
    z1 = (point.x * basis.v.y - point.y * basis.v.x) / det
    z2 = (basis.u.x * point.y - basis.u.y * point.x) / det
    return z1, z2


def lattice_point(basis: LatticeBasis, z1, z2) -> Vec2:
    """The lattice point z1*u + z2*v."""
    z1, z2 = Fraction(z1), Fraction(z2)
    return Vec2(
        z1 * basis.u.x + z2 * basis.v.x,
        z1 * basis.u.y + z2 * basis.v.y,
    )


def contains(basis: LatticeBasis, point: Vec2) -> bool:
    """True iff point is an integer combination of the basis vectors."""
    z1, z2 = basis_coordinates(basis, point)
    return z1.denominator == 1 and z2.denominator == 1


def _scaled_ints(basis: LatticeBasis) -> tuple[int, int, int, int, int]:
    # Clear denominators once so inner search loops run on plain integers.
    den = math.lcm(
        basis.u.x.denominator,
        basis.u.y.denominator,
        basis.v.x.denominator,
        basis.v.y.denominator,
    )
    return (
        den,
        int(basis.u.x * den),
        int(basis.u.y * den),
        int(basis.v.x * den),
        int(basis.v.y * den),
    )


def _inverse_l1_norm(basis: LatticeBasis) -> Fraction:
    # l1 operator norm of the inverse basis matrix: max column sum of
    # [[vy, -vx], [-uy, ux]] / det.
    return (
        max(
            abs(basis.v.y) + abs(basis.u.y),
            abs(basis.v.x) + abs(basis.u.x),
        )
        / basis.covolume
    )


def enumerate_lattice_points(basis: LatticeBasis, radius) -> list[Vec2]:
    """Every lattice point with l1 norm <= radius, sorted by (norm, x, y).

    Complete by construction: any such point is z1*u + z2*v with
    |z1| + |z2| <= N(B^-1) * radius, and all integer pairs in that diamond
    are scanned.
    """
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    den, ux, uy, vx, vy = _scaled_ints(basis)
    zmax = math.floor(_inverse_l1_norm(basis) * radius)
    rn, rd = radius.numerator, radius.denominator
    hits = []
    for z1 in range(-zmax, zmax + 1):
        span = zmax - abs(z1)
        for z2 in range(-span, span + 1):
            a = z1 * ux + z2 * vx
            b = z1 * uy + z2 * vy
            norm = abs(a) + abs(b)
            if norm * rd <= rn * den:
                hits.append((norm, a, b))
    hits.sort()
    return [Vec2(Fraction(a, den), Fraction(b, den)) for _, a, b in hits]


def lattice_points_in_box(
    basis: LatticeBasis,
    x_lo,
    x_hi,
    y_lo,
    y_hi,
    strict: bool = False,
) -> list[Vec2]:
    """Lattice points inside the axis-aligned box, sorted by (x, y).

    With strict=True the box is open.  The z1 range is the integer hull of the
    box preimage (a parallelogram, so extremes sit at corners); per z1 the
    feasible z2 form an interval solved directly from the two coordinate
    constraints.
    """
    x_lo, x_hi = Fraction(x_lo), Fraction(x_hi)
    y_lo, y_hi = Fraction(y_lo), Fraction(y_hi)
    if x_hi < x_lo or y_hi < y_lo or (strict and (x_hi == x_lo or y_hi == y_lo)):
        return []
    det = basis.det
    ux, uy, vx, vy = basis.u.x, basis.u.y, basis.v.x, basis.v.y
    corners = ((x_lo, y_lo), (x_lo, y_hi), (x_hi, y_lo), (x_hi, y_hi))
    z1_vals = [(cx * vy - cy * vx) / det for cx, cy in corners]
    z1_min, z1_max = math.ceil(min(z1_vals)), math.floor(max(z1_vals))

    def z_interval(base: Fraction, coeff: Fraction, lo: Fraction, hi: Fraction):
        # Integer z with lo <(=) base + z*coeff <(=) hi; None means empty,
        # (None, None) means unconstrained.
        if coeff == 0:
            inside = lo < base < hi if strict else lo <= base <= hi
            return (None, None) if inside else None
        t_lo = (lo - base) / coeff
        t_hi = (hi - base) / coeff
        if coeff < 0:
            t_lo, t_hi = t_hi, t_lo
        if strict:
            return (math.floor(t_lo) + 1, math.ceil(t_hi) - 1)
        return (math.ceil(t_lo), math.floor(t_hi))

    out = []
    for z1 in range(z1_min, z1_max + 1):
        bx = z_interval(z1 * ux, vx, x_lo, x_hi)
        if bx is None:
            continue
        by = z_interval(z1 * uy, vy, y_lo, y_hi)
        if by is None:
            continue
        los = [b[0] for b in (bx, by) if b[0] is not None]
        his = [b[1] for b in (bx, by) if b[1] is not None]
        if not los or not his:
            # Both coefficients zero would mean v = 0, impossible here.
            raise AssertionError("unbounded fiber in box enumeration")
        for z2 in range(max(los), min(his) + 1):
            out.append(lattice_point(basis, z1, z2))
    out.sort(key=lambda p: (p.x, p.y))
    return out


@dataclass(frozen=True)
class QuadrantBasis:
    """Shortest lattice vector in each sign class, in canonical orientation.

    u1 minimizes the l1 norm over nonzero points with x*y >= 0 and carries
    x > 0, or x = 0 with y > 0.  u2 minimizes over points with x*y < 0 and
    carries x < 0 < y.  The pair always generates the full lattice.
    """

    u1: Vec2
    u2: Vec2

    def __post_init__(self):
        if self.u1.is_zero() or quadrant_of(self.u1) is not Quadrant.Q1:
            raise ValueError(f"u1 must be a nonzero same-sign vector, got {self.u1}")
        if self.u1.x < 0 or (self.u1.x == 0 and self.u1.y <= 0):
            raise ValueError(f"u1 not in canonical orientation: {self.u1}")
        if not (self.u2.x < 0 < self.u2.y):
            raise ValueError(f"u2 must satisfy x < 0 < y, got {self.u2}")
        if self.u1.x * self.u2.y - self.u1.y * self.u2.x == 0:
            raise ValueError("quadrant basis vectors are collinear")

    @property
    def length_sum(self) -> Fraction:
        return l1_norm(self.u1) + l1_norm(self.u2)


def _l1_shells() -> Iterator[tuple[int, Iterator[tuple[int, int]]]]:
    n = 0
    while True:
        yield n, _shell(n)
        n += 1


def _shell(n: int) -> Iterator[tuple[int, int]]:
    if n == 0:
        yield 0, 0
        return
    for z1 in range(-n, n + 1):
        rest = n - abs(z1)
        yield z1, rest
        if rest:
            yield z1, -rest


def quadrant_basis(basis: LatticeBasis) -> QuadrantBasis:
    """Find the shortest same-sign and opposite-sign lattice vectors.

    Scans integer coefficient pairs shell by shell in increasing |z1| + |z2|.
    Once both candidates exist, the search is complete as soon as the finished
    shells exhaust every preimage of the current best norms, which the
    inverse-norm bound guarantees.  Ties at equal norm go to the vector with
    the smaller |y| (the flattest one).
    """
    den, ux, uy, vx, vy = _scaled_ints(basis)
    inv = _inverse_l1_norm(basis)
    best1: Optional[tuple[int, int, int]] = None  # (norm, y, x) scaled
    best2: Optional[tuple[int, int, int]] = None
    for n, shell in _l1_shells():
        if best1 is not None and best2 is not None:
            worst = Fraction(max(best1[0], best2[0]), den)
            if n >= math.floor(inv * worst) + 1:
                break
        for z1, z2 in shell:
            a = z1 * ux + z2 * vx
            b = z1 * uy + z2 * vy
            if a == 0 and b == 0:
                continue
            if (a > 0 > b) or (a < 0 < b):
                if a > 0:
                    a, b = -a, -b
                key = (b - a, b, a)
                if best2 is None or key < best2:
                    best2 = key
            else:
                if a < 0 or (a == 0 and b < 0):
                    a, b = -a, -b
                key = (a + b, b, a)
                if best1 is None or key < best1:
                    best1 = key
    assert best1 is not None and best2 is not None
    u1 = Vec2(Fraction(best1[2], den), Fraction(best1[1], den))
    u2 = Vec2(Fraction(best2[2], den), Fraction(best2[1], den))
    result = QuadrantBasis(u1, u2)
    if abs(u1.x * u2.y - u1.y * u2.x) != basis.covolume:
        raise AssertionError(f"quadrant pair is not a lattice basis for {basis}")
    return result


@dataclass(frozen=True)
class AxisPeriods:
    """Least positive axis-aligned lattice steps and one-rectangle lengths.

    d_x is the least a > 0 with (a, 0) in the lattice, m_x = d_x + cov/d_x the
    length of the width-d_x one-rectangle tiling; d_y/m_y likewise.  None
    encodes "no such axis point" for completeness; it never occurs for
    rational bases.
    """

    d_x: Optional[Fraction]
    d_y: Optional[Fraction]
    m_x: Optional[Fraction]
    m_y: Optional[Fraction]


def axis_periods(basis: LatticeBasis) -> AxisPeriods:
    """Compute d_x, d_y, m_x, m_y from coordinate gcds.

    The y-coordinates of lattice points form g_y*Z with g_y = rat_gcd(u.y, v.y),
    and the kernel of that projection is d_x*Z x {0}, so d_x = cov/g_y; the
    x-axis case is symmetric.
    """
    cov = basis.covolume
    g_y = rat_gcd(basis.u.y, basis.v.y)
    g_x = rat_gcd(basis.u.x, basis.v.x)
    d_x = cov / g_y
    d_y = cov / g_x
    return AxisPeriods(d_x=d_x, d_y=d_y, m_x=d_x + g_y, m_y=d_y + g_x)


class Winner(Enum):
    """Which construction attains the minimum tiling length."""

    ONE_RECT_X = "one_rect_x"
    ONE_RECT_Y = "one_rect_y"
    TWO_RECT = "two_rect"


@dataclass(frozen=True)
class MinLengthReport:
    covolume: Fraction
    quadrant_sum: Fraction
    m_x: Optional[Fraction]
    m_y: Optional[Fraction]
    min_length: Fraction
    winner: Winner
    witness: QuadrantBasis

    def to_json_dict(self) -> dict:
        return {
            "covolume": str(self.covolume),
            "quadrant_sum": str(self.quadrant_sum),
            "m_x": None if self.m_x is None else str(self.m_x),
            "m_y": None if self.m_y is None else str(self.m_y),
            "min_length": str(self.min_length),
            "winner": self.winner.value,
            "witness": {
                "u1": [str(self.witness.u1.x), str(self.witness.u1.y)],
                "u2": [str(self.witness.u2.x), str(self.witness.u2.y)],
            },
        }


def min_length(basis: LatticeBasis) -> MinLengthReport:
    """Exact minimum total edge length over all axis-aligned rectangular
    tilings of the torus R^2 / lattice.

    The minimum is the smallest of three candidates: the quadrant-basis norm
    sum and the two one-rectangle lengths m_x, m_y.  Ties prefer one-rectangle
    constructions, x before y.
    """
    qb = quadrant_basis(basis)
    periods = axis_periods(basis)
    qsum = qb.length_sum
    candidates = [qsum]
    for m in (periods.m_x, periods.m_y):
        if m is not None:
            candidates.append(m)
    best = min(candidates)
    if periods.m_x is not None and periods.m_x == best:
        winner = Winner.ONE_RECT_X
    elif periods.m_y is not None and periods.m_y == best:
        winner = Winner.ONE_RECT_Y
    else:
        winner = Winner.TWO_RECT
    return MinLengthReport(
        covolume=basis.covolume,
        quadrant_sum=qsum,
        m_x=periods.m_x,
        m_y=periods.m_y,
        min_length=best,
        winner=winner,
        witness=qb,
    )
