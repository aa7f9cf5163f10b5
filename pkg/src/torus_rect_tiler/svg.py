"""Deterministic SVG pictures of tilings: rectangle outlines in the plane,
the basis parallelogram for context, nearby lattice points, and the basis
vectors drawn as arrows from the origin.

Geometry stays exact; rationals are rounded half-up at three decimals only
when attribute text is emitted, so identical inputs give identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_math import Vec2
from .lattice import lattice_points_in_box
from .tiling import Tiling


def _round3(x: Fraction) -> str:
    n = x * 1000
    sign = -1 if n < 0 else 1
    m = sign * math.floor(abs(n) + Fraction(1, 2))
    whole, frac = divmod(abs(m), 1000)
    text = f"{whole}.{frac:03d}".rstrip("0").rstrip(".")
    return ("-" + text) if m < 0 else text


@dataclass
class SvgScene:
    """Viewport transform plus accumulated element markup."""

    scale: Fraction
    min_x: Fraction
    max_y: Fraction
    width_px: Fraction
    height_px: Fraction
    elements: list[str] = field(default_factory=list)

    def point(self, p: Vec2) -> tuple[str, str]:
        return (
            _round3((p.x - self.min_x) * self.scale),
            _round3((self.max_y - p.y) * self.scale),
        )

    def add(self, markup: str) -> None:
        self.elements.append(markup)


def render_tiling_svg(tiling: Tiling, width: int = 640) -> str:
    """Render the tiling to standalone SVG text."""
    if width <= 0:
        raise ValueError("width must be a positive pixel count")
    basis = tiling.basis
    origin = Vec2(0, 0)
    anchors = [origin, basis.u, basis.v, basis.u + basis.v]
    for rect in tiling.rects:
        anchors.extend(rect.corners())
    xs = [p.x for p in anchors]
    ys = [p.y for p in anchors]
    pad = max(max(xs) - min(xs), max(ys) - min(ys)) / 10
    x_lo, x_hi = min(xs) - pad, max(xs) + pad
    y_lo, y_hi = min(ys) - pad, max(ys) + pad
    scale = Fraction(width) / (x_hi - x_lo)
    scene = SvgScene(
        scale=scale,
        min_x=x_lo,
        max_y=y_hi,
        width_px=Fraction(width),
        height_px=(y_hi - y_lo) * scale,
    )

    par = (origin, basis.u, basis.u + basis.v, basis.v)
    points_attr = " ".join(",".join(scene.point(p)) for p in par)
    scene.add(
        f'<polygon class="cell" points="{points_attr}" fill="none" '
        'stroke="#999999" stroke-dasharray="6,4" stroke-width="1"/>'
    )

    for lam in lattice_points_in_box(basis, x_lo, x_hi, y_lo, y_hi):
        cx, cy = scene.point(lam)
        scene.add(
            f'<circle class="lattice-point" cx="{cx}" cy="{cy}" r="3" fill="#444444"/>'
        )

    for rect in tiling.rects:
        x, y = scene.point(Vec2(rect.x0, rect.y1))
        w = _round3(rect.width * scale)
        h = _round3(rect.height * scale)
        scene.add(
            f'<rect class="tile" x="{x}" y="{y}" width="{w}" height="{h}" '
            'fill="#76b5e4" fill-opacity="0.35" stroke="#1f5e91" stroke-width="2"/>'
        )

    for vector in (basis.u, basis.v):
        x0, y0 = scene.point(origin)
        x1, y1 = scene.point(vector)
        scene.add(
            f'<path class="arrow" d="M {x0} {y0} L {x1} {y1}" fill="none" '
            'stroke="#c03020" stroke-width="2.5" marker-end="url(#arrowhead)"/>'
        )

    w_attr = _round3(scene.width_px)
    h_attr = _round3(scene.height_px)
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w_attr}" '
        f'height="{h_attr}" viewBox="0 0 {w_attr} {h_attr}">',
        "<defs>",
        '<marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" '
        'refY="4" orient="auto"><polygon points="0,0 8,4 0,8" fill="#c03020"/>'
        "</marker>",
        "</defs>",
    ]
    return "\n".join(head + scene.elements + ["</svg>"]) + "\n"
