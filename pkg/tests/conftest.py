"""Shared helpers: random inputs and independent brute-force oracles."""

import math
import random
from fractions import Fraction

from torus_rect_tiler import (
    LatticeBasis,
    Rect,
    Tiling,
    Vec2,
    enumerate_lattice_points,
    l1_norm,
)


def random_int_basis(rng: random.Random, bound: int = 20) -> LatticeBasis:
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if a * d - b * c:
            return LatticeBasis(Vec2(a, b), Vec2(c, d))


def random_rational_basis(rng: random.Random, bound: int = 12, max_den: int = 4) -> LatticeBasis:
    while True:
        vals = [Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)) for _ in range(4)]
        u, v = Vec2(vals[0], vals[1]), Vec2(vals[2], vals[3])
        if u.x * v.y - u.y * v.x:
            return LatticeBasis(u, v)


def random_rational(rng: random.Random, bound: int = 9, max_den: int = 9) -> Fraction:
    n = rng.randint(-bound, bound)
    return Fraction(n, rng.randint(1, max_den))


def random_positive_rational(rng: random.Random, bound: int = 9, max_den: int = 9) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, max_den))


def random_unimodular(rng: random.Random, steps: int = 5) -> tuple[int, int, int, int]:
    """Random integer matrix with determinant +-1, built from elementary operations."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(steps):
        k = rng.randint(-3, 3)
        if rng.random() < 0.5:
            a, b = a + k * c, b + k * d
        else:
            c, d = c + k * a, d + k * b
        if rng.random() < 0.25:
            a, b, c, d = c, d, a, b
        if rng.random() < 0.25:
            a, b = -a, -b
    return a, b, c, d


def transformed_basis(basis: LatticeBasis, coeffs) -> LatticeBasis:
    a, b, c, d = coeffs
    return LatticeBasis(
        basis.u.scaled(a) + basis.v.scaled(b),
        basis.u.scaled(c) + basis.v.scaled(d),
    )


def random_split_tiling(rng: random.Random, tiling: Tiling, max_splits: int = 6) -> Tiling:
    """Cut rectangles at interior fifths; stays a valid tiling, length grows."""
    rects = list(tiling.rects)
    for _ in range(rng.randint(1, max_splits)):
        i = rng.randrange(len(rects))
        r = rects[i]
        t = Fraction(rng.randint(1, 4), 5)
        if rng.random() < 0.5:
            cut = r.x0 + r.width * t
            pieces = [Rect(r.x0, cut, r.y0, r.y1), Rect(cut, r.x1, r.y0, r.y1)]
        else:
            cut = r.y0 + r.height * t
            pieces = [Rect(r.x0, r.x1, r.y0, cut), Rect(r.x0, r.x1, cut, r.y1)]
        rects[i : i + 1] = pieces
    return Tiling(tiling.basis, tuple(rects))


def brute_quadrant_minima(basis: LatticeBasis) -> tuple[Fraction, Fraction]:
    """Smallest l1 norms in each sign class, by scanning growing l1 balls.

    Independent of the shell search inside quadrant_basis: this only filters
    the output of enumerate_lattice_points.
    """
    radius = min(l1_norm(basis.u), l1_norm(basis.v))
    while True:
        points = enumerate_lattice_points(basis, radius)
        q1 = [l1_norm(p) for p in points if not p.is_zero() and p.x * p.y >= 0]
        q2 = [l1_norm(p) for p in points if p.x * p.y < 0]
        if q1 and q2:
            return min(q1), min(q2)
        radius *= 2


def brute_axis_period(basis: LatticeBasis, axis: str) -> Fraction:
    """Least positive a with (a, 0) (axis="x") or (0, a) (axis="y") on the
    lattice, for integer bases: scan multiples of the coordinate gcd and test
    membership with modular arithmetic."""
    det = abs(int(basis.det))
    if axis == "x":
        step = math.gcd(int(basis.u.x), int(basis.v.x))
        cu, cv = int(basis.u.y), int(basis.v.y)
    else:
        step = math.gcd(int(basis.u.y), int(basis.v.y))
        cu, cv = int(basis.u.x), int(basis.v.x)
    k = 1
    while True:
        a = k * step
        if (a * cu) % det == 0 and (a * cv) % det == 0:
            return Fraction(a)
        k += 1
        assert k <= det + 1, "axis period scan ran away"
