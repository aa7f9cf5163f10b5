"""Torus-side machinery: canonical quotient points, full tiling verification,
skeleton graphs, axis path decomposition, and the path-merging reduction.

Points on the torus are identified by a canonical representative inside the
fundamental parallelogram.  Horizontal torus lines form a circle family with
spacing g_y = cov/d_x and circumference d_x (vertical lines symmetrically), so
every edge computation reduces to exact interval arithmetic on a circle.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exact_math import Vec2
from .lattice import (
    LatticeBasis,
    axis_periods,
    basis_coordinates,
    lattice_point,
    lattice_points_in_box,
)
from .tiling import Rect, Tiling, tiling_length


class InvalidTilingError(ValueError):
    """Operation requires a verified tiling."""


class CycleExistsError(ValueError):
    """An axis cycle makes the path-merging reduction inapplicable."""


class ReductionStepInvalidError(RuntimeError):
    """A rebuilt tiling failed verification or did not shrink; never ignored."""


class Orientation(Enum):
    H = "h"
    V = "v"


@dataclass(frozen=True)
class TorusPoint:
    """Canonical representative of a torus point (fractional basis coords in [0, 1))."""

    rep: Vec2


def canonicalize(basis: LatticeBasis, point: Vec2) -> TorusPoint:
    """Quotient map: two planar points give equal TorusPoints iff their
    difference is a lattice point."""
    z1, z2 = basis_coordinates(basis, point)
    f1 = z1 - math.floor(z1)
    f2 = z2 - math.floor(z2)
    return TorusPoint(lattice_point(basis, f1, f2))


class ViolationKind(Enum):
    INJECTIVITY = "injectivity"
    OVERLAP = "overlap"
    COVERAGE = "coverage"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...]

    def to_json_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"kind": v.kind.value, "detail": v.detail} for v in self.violations
            ],
        }


def verify_tiling(tiling: Tiling) -> VerificationReport:
    """Decide the three tiling conditions exactly.

    Injectivity of the quotient on each open rectangle fails iff a nonzero
    lattice point sits in the open box (-w, w) x (-h, h); two interiors meet
    on the torus iff a lattice point sits in their open difference box; and
    given those, coverage is equivalent to the areas summing to the covolume.
    """
    basis = tiling.basis
    violations: list[Violation] = []
    rects = tiling.rects
    for i, r in enumerate(rects):
        for lam in lattice_points_in_box(
            basis, -r.width, r.width, -r.height, r.height, strict=True
        ):
            if not lam.is_zero():
                violations.append(
                    Violation(
                        ViolationKind.INJECTIVITY,
                        f"rect {i}: lattice point {lam} is shorter than the "
                        f"rectangle in both axes",
                    )
                )
                break
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            ri, rj = rects[i], rects[j]
            hits = lattice_points_in_box(
                basis,
                rj.x0 - ri.x1,
                rj.x1 - ri.x0,
                rj.y0 - ri.y1,
                rj.y1 - ri.y0,
                strict=True,
            )
            if hits:
                violations.append(
                    Violation(
                        ViolationKind.OVERLAP,
                        f"rects {i} and {j}: interiors meet under lattice "
                        f"shift {hits[0]}",
                    )
                )
    total_area = sum((r.area for r in rects), Fraction(0))
    if total_area != basis.covolume:
        violations.append(
            Violation(
                ViolationKind.COVERAGE,
                f"rectangle areas sum to {total_area}, torus area is {basis.covolume}",
            )
        )
    return VerificationReport(valid=not violations, violations=tuple(violations))


@dataclass(frozen=True)
class SkeletonEdge:
    """Atomic axis-aligned segment: starts at a vertex, runs in +x (H) or +y (V)."""

    origin: TorusPoint
    orientation: Orientation
    length: Fraction


@dataclass(frozen=True)
class Skeleton:
    basis: LatticeBasis
    vertices: tuple[TorusPoint, ...]
    edges: tuple[SkeletonEdge, ...]

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))


# ---------------------------------------------------------------------------
# Torus line geometry shared by skeleton construction, decomposition, reduction


def _fmod(a: Fraction, m: Fraction) -> Fraction:
    return a - m * math.floor(a / m)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    # (g, x, y) with a*x + b*y = g and g = gcd(a, b) >= 0.
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _lattice_point_with_component(
    basis: LatticeBasis, delta: Fraction, component: str
) -> Vec2:
    """Some lattice point whose chosen coordinate equals delta.

    delta must lie in the projection lattice of that coordinate (a multiple of
    rat_gcd of the two basis components), which holds for every caller here.
    """
    cu = basis.u.y if component == "y" else basis.u.x
    cv = basis.v.y if component == "y" else basis.v.x
    den = math.lcm(cu.denominator, cv.denominator, delta.denominator)
    a, b, d = int(cu * den), int(cv * den), int(delta * den)
    g, x, y = _egcd(a, b)
    if g == 0:
        if d:
            raise ValueError("no lattice point has that coordinate")
        return Vec2(0, 0)
    if d % g:
        raise ValueError(f"{delta} is not in the {component}-projection lattice")
    k = d // g
    return lattice_point(basis, x * k, y * k)


@dataclass
class _AxisFrame:
    """Circle coordinates for one family of parallel torus lines."""

    basis: LatticeBasis
    orientation: Orientation
    circumference: Fraction  # d_x for H lines, d_y for V lines
    spacing: Fraction  # gap between neighbouring lines of the family

    def locate(self, along: Fraction, offset: Fraction) -> tuple[Fraction, Fraction]:
        """Map a planar position to (line key, circle coordinate).

        ``offset`` is the coordinate across the family (y for H), ``along``
        the one measured around the circle (x for H).
        """
        component = "y" if self.orientation is Orientation.H else "x"
        key = _fmod(offset, self.spacing)
        lam = _lattice_point_with_component(self.basis, offset - key, component)
        lam_along = lam.x if self.orientation is Orientation.H else lam.y
        coord = _fmod(along - lam_along, self.circumference)
        return key, coord


def _axis_frames(basis: LatticeBasis) -> dict[Orientation, _AxisFrame]:
    periods = axis_periods(basis)
    cov = basis.covolume
    return {
        Orientation.H: _AxisFrame(basis, Orientation.H, periods.d_x, cov / periods.d_x),
        Orientation.V: _AxisFrame(basis, Orientation.V, periods.d_y, cov / periods.d_y),
    }


@dataclass
class _Line:
    """One torus line: vertex cut positions and which elementary arcs are covered."""

    orientation: Orientation
    key: Fraction
    circumference: Fraction
    vertex_at: dict[Fraction, TorusPoint] = field(default_factory=dict)
    cuts: list[Fraction] = field(default_factory=list)
    covered: list[bool] = field(default_factory=list)

    def arc_length(self, i: int) -> Fraction:
        m = len(self.cuts)
        if m == 1:
            return self.circumference
        j = (i + 1) % m
        if j:
            return self.cuts[j] - self.cuts[i]
        return self.circumference - self.cuts[-1] + self.cuts[0]


@dataclass
class _SidePlacement:
    """A rectangle side mapped onto its torus line."""

    rect_index: int
    side: str  # bottom | top | left | right
    orientation: Orientation
    key: Fraction
    start: Fraction
    length: Fraction
    arcs: tuple[int, ...] = ()


_SIDES = (
    ("bottom", Orientation.H),
    ("top", Orientation.H),
    ("left", Orientation.V),
    ("right", Orientation.V),
)


def _side_span(rect: Rect, side: str) -> tuple[Fraction, Fraction, Fraction]:
    # (offset across the family, span start, span end)
    if side == "bottom":
        return rect.y0, rect.x0, rect.x1
    if side == "top":
        return rect.y1, rect.x0, rect.x1
    if side == "left":
        return rect.x0, rect.y0, rect.y1
    return rect.x1, rect.y0, rect.y1


def _build_lines(
    tiling: Tiling,
) -> tuple[
    list[TorusPoint],
    dict[tuple[Orientation, Fraction], _Line],
    dict[tuple[int, str], _SidePlacement],
]:
    """Place all corners and sides of a (verified) tiling onto torus lines.

    Vertices are the canonical corner images; each line records the circle
    coordinates of the vertices on it (the cut points) and which elementary
    arcs between consecutive cuts are covered by at least one side.
    """
    basis = tiling.basis
    frames = _axis_frames(basis)

    vertex_set = {
        canonicalize(basis, corner)
        for rect in tiling.rects
        for corner in rect.corners()
    }
    vertices = sorted(vertex_set, key=lambda w: (w.rep.x, w.rep.y))

    lines: dict[tuple[Orientation, Fraction], _Line] = {}
    for w in vertices:
        for orientation, frame in frames.items():
            if orientation is Orientation.H:
                along, offset = w.rep.x, w.rep.y
            else:
                along, offset = w.rep.y, w.rep.x
            key, coord = frame.locate(along, offset)
            line = lines.setdefault(
                (orientation, key), _Line(orientation, key, frame.circumference)
            )
            line.vertex_at[coord] = w

    placements: dict[tuple[int, str], _SidePlacement] = {}
    per_line: dict[tuple[Orientation, Fraction], list[_SidePlacement]] = {}
    for idx, rect in enumerate(tiling.rects):
        for side, orientation in _SIDES:
            offset, lo, hi = _side_span(rect, side)
            key, start = frames[orientation].locate(lo, offset)
            pl = _SidePlacement(idx, side, orientation, key, start, hi - lo)
            placements[(idx, side)] = pl
            per_line.setdefault((orientation, key), []).append(pl)

    for line_id, line in lines.items():
        line.cuts = sorted(line.vertex_at)
        line.covered = [False] * len(line.cuts)
        for pl in per_line.get(line_id, ()):
            i = bisect_left(line.cuts, pl.start)
            if i >= len(line.cuts) or line.cuts[i] != pl.start:
                raise AssertionError("side endpoint is not a vertex cut")
            remaining = pl.length
            arcs = []
            while remaining > 0:
                arcs.append(i)
                line.covered[i] = True
                remaining -= line.arc_length(i)
                i = (i + 1) % len(line.cuts)
            if remaining:
                raise AssertionError("side does not land on a vertex cut")
            pl.arcs = tuple(arcs)

    orphans = set(per_line) - set(lines)
    if orphans:
        raise AssertionError(f"sides on lines without vertices: {orphans}")
    return vertices, lines, placements


def build_skeleton(tiling: Tiling) -> Skeleton:
    """Graph of corner images and subdivided side images on the torus.

    Each rectangle side is split at every vertex lying on its line, and
    coinciding pieces from adjacent rectangles merge into one atomic edge.
    The total edge length equals the tiling length.
    """
    report = verify_tiling(tiling)
    if not report.valid:
        raise InvalidTilingError(
            "; ".join(f"{v.kind.value}: {v.detail}" for v in report.violations)
        )
    return _skeleton_unchecked(tiling)


def _skeleton_unchecked(tiling: Tiling) -> Skeleton:
    vertices, lines, _ = _build_lines(tiling)
    edges = []
    for (_, _), line in sorted(
        lines.items(), key=lambda item: (item[0][0].value, item[0][1])
    ):
        for i, is_covered in enumerate(line.covered):
            if is_covered:
                edges.append(
                    SkeletonEdge(
                        line.vertex_at[line.cuts[i]],
                        line.orientation,
                        line.arc_length(i),
                    )
                )
    edges.sort(
        key=lambda e: (e.orientation.value, e.origin.rep.x, e.origin.rep.y, e.length)
    )
    return Skeleton(tiling.basis, tuple(vertices), tuple(edges))


@dataclass(frozen=True)
class AxisPathDecomposition:
    """Partition of skeleton edges into axis cycles and maximal axis paths."""

    cycles_h: tuple[tuple[SkeletonEdge, ...], ...]
    paths_h: tuple[tuple[SkeletonEdge, ...], ...]
    cycles_v: tuple[tuple[SkeletonEdge, ...], ...]
    paths_v: tuple[tuple[SkeletonEdge, ...], ...]


def decompose_axis_paths(skeleton: Skeleton) -> AxisPathDecomposition:
    """Group each orientation's edges by torus line and chain them.

    A line whose covered arcs close the full circle is a cycle (its length is
    then the axis period); otherwise each maximal run of consecutive arcs is
    one maximal path.
    """
    frames = _axis_frames(skeleton.basis)
    groups: dict[tuple[Orientation, Fraction], list[tuple[Fraction, SkeletonEdge]]] = {}
    for edge in skeleton.edges:
        frame = frames[edge.orientation]
        if edge.orientation is Orientation.H:
            along, offset = edge.origin.rep.x, edge.origin.rep.y
        else:
            along, offset = edge.origin.rep.y, edge.origin.rep.x
        key, coord = frame.locate(along, offset)
        groups.setdefault((edge.orientation, key), []).append((coord, edge))

    cycles = {Orientation.H: [], Orientation.V: []}
    paths = {Orientation.H: [], Orientation.V: []}
    for (orientation, key) in sorted(groups, key=lambda g: (g[0].value, g[1])):
        circ = frames[orientation].circumference
        items = groups[(orientation, key)]
        starts = {coord: edge for coord, edge in items}
        ends = {_fmod(coord + edge.length, circ) for coord, edge in items}
        heads = sorted(c for c in starts if c not in ends)

        def chain(from_coord: Fraction) -> tuple[list[SkeletonEdge], Fraction]:
            run = []
            c = from_coord
            while c in starts:
                edge = starts.pop(c)
                run.append(edge)
                c = _fmod(c + edge.length, circ)
            return run, c

        if not heads:
            first = min(starts)
            run, endc = chain(first)
            if endc != first or starts:
                raise AssertionError("cycle does not close over its line")
            if sum((e.length for e in run), Fraction(0)) != circ:
                raise AssertionError("cycle length differs from the axis period")
            cycles[orientation].append(tuple(run))
        else:
            for head in heads:
                run, _ = chain(head)
                paths[orientation].append(tuple(run))
            if starts:
                raise AssertionError("unchained edges left on a line")
    return AxisPathDecomposition(
        cycles_h=tuple(cycles[Orientation.H]),
        paths_h=tuple(paths[Orientation.H]),
        cycles_v=tuple(cycles[Orientation.V]),
        paths_v=tuple(paths[Orientation.V]),
    )


@dataclass(frozen=True)
class ReductionStep:
    """One application of the path-merging shift.

    Rectangle indices refer to the step's input tiling.  s1 holds rectangles
    with both axis-facing sides on the chosen path, s2 those with only the
    high side (top for H, right for V), s3 those with only the low side.
    When mirrored, the shift runs toward increasing coordinates and s3 is the
    shrinking class.
    """

    axis: Orientation
    line_key: Fraction
    path_start: Fraction
    mirrored: bool
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    s3: tuple[int, ...]
    shrink: Fraction
    eliminated: tuple[int, ...]
    length_before: Fraction
    length_after: Fraction

    def to_json_dict(self) -> dict:
        return {
            "axis": self.axis.value,
            "line": str(self.line_key),
            "path_start": str(self.path_start),
            "mirrored": self.mirrored,
            "s1": list(self.s1),
            "s2": list(self.s2),
            "s3": list(self.s3),
            "shrink": str(self.shrink),
            "eliminated": list(self.eliminated),
            "length_before": str(self.length_before),
            "length_after": str(self.length_after),
        }


def reduce_tiling(tiling: Tiling) -> Tiling:
    """Shrink a cycle-free tiling until each axis has one maximal path."""
    reduced, _ = reduce_tiling_with_trace(tiling)
    return reduced


def reduce_tiling_with_trace(
    tiling: Tiling,
) -> tuple[Tiling, tuple[ReductionStep, ...]]:
    """Repeatedly merge maximal axis paths, horizontal axis first.

    Each step classifies the rectangles incident to the chosen path, shifts
    every path-facing side by the minimum extent of the shrinking class, drops
    the rectangles that collapse, and re-verifies the result.  The output is a
    valid tiling with exactly one maximal path per axis and length at most the
    input's.
    """
    report = verify_tiling(tiling)
    if not report.valid:
        raise InvalidTilingError(
            "; ".join(f"{v.kind.value}: {v.detail}" for v in report.violations)
        )

    current = tiling
    steps: list[ReductionStep] = []
    for _ in range(len(tiling.rects) + 2):
        _, lines, placements = _build_lines(current)
        runs_by_axis: dict[Orientation, list] = {
            Orientation.H: [],
            Orientation.V: [],
        }
        for (orientation, key), line in sorted(
            lines.items(), key=lambda item: (item[0][0].value, item[0][1])
        ):
            if line.covered and all(line.covered):
                raise CycleExistsError(
                    f"{orientation.value}-cycle on line {key}: the path-merging "
                    "reduction does not apply"
                )
            for run in _covered_runs(line.covered):
                runs_by_axis[orientation].append(
                    (key, line.cuts[run[0]], frozenset(run))
                )

        if len(runs_by_axis[Orientation.H]) > 1:
            orientation = Orientation.H
        elif len(runs_by_axis[Orientation.V]) > 1:
            orientation = Orientation.V
        else:
            break
        target_key, target_start, target_arcs = min(
            runs_by_axis[orientation], key=lambda t: (t[0], t[1])
        )

        hi_name, lo_name = (
            ("top", "bottom") if orientation is Orientation.H else ("right", "left")
        )

        def on_target(idx: int, side: str) -> bool:
            pl = placements[(idx, side)]
            if pl.orientation is not orientation or pl.key != target_key:
                return False
            arcs = set(pl.arcs)
            overlap = arcs & target_arcs
            if overlap and overlap != arcs:
                raise ReductionStepInvalidError(
                    "rectangle side straddles two maximal paths"
                )
            return overlap == arcs

        s1, s2, s3 = [], [], []
        hi_on, lo_on = {}, {}
        for idx in range(len(current.rects)):
            hi_on[idx] = on_target(idx, hi_name)
            lo_on[idx] = on_target(idx, lo_name)
            if hi_on[idx] and lo_on[idx]:
                s1.append(idx)
            elif hi_on[idx]:
                s2.append(idx)
            elif lo_on[idx]:
                s3.append(idx)

        mirrored = len(s2) < len(s3)
        working = s3 if mirrored else s2
        if not working:
            raise ReductionStepInvalidError(
                "several maximal paths but no shiftable rectangle on the chosen one"
            )
        direction = 1 if mirrored else -1
        if orientation is Orientation.H:
            shrink = min(current.rects[i].height for i in working)
        else:
            shrink = min(current.rects[i].width for i in working)

        new_rects = []
        eliminated = []
        for idx, r in enumerate(current.rects):
            lo_b, hi_b = (r.y0, r.y1) if orientation is Orientation.H else (r.x0, r.x1)
            new_lo = lo_b + direction * shrink if lo_on[idx] else lo_b
            new_hi = hi_b + direction * shrink if hi_on[idx] else hi_b
            if new_lo == new_hi:
                eliminated.append(idx)
                continue
            if orientation is Orientation.H:
                new_rects.append(Rect(r.x0, r.x1, new_lo, new_hi))
            else:
                new_rects.append(Rect(new_lo, new_hi, r.y0, r.y1))

        if not eliminated:
            raise ReductionStepInvalidError("shift eliminated no rectangle")
        new_tiling = Tiling(current.basis, tuple(new_rects))
        check = verify_tiling(new_tiling)
        if not check.valid:
            raise ReductionStepInvalidError(
                "rebuilt tiling is invalid: "
                + "; ".join(f"{v.kind.value}: {v.detail}" for v in check.violations)
            )
        length_before = tiling_length(current)
        length_after = tiling_length(new_tiling)
        if not length_after < length_before:
            raise ReductionStepInvalidError("reduction step did not shorten the tiling")
        steps.append(
            ReductionStep(
                axis=orientation,
                line_key=target_key,
                path_start=target_start,
                mirrored=mirrored,
                s1=tuple(s1),
                s2=tuple(s2),
                s3=tuple(s3),
                shrink=shrink,
                eliminated=tuple(eliminated),
                length_before=length_before,
                length_after=length_after,
            )
        )
        current = new_tiling
    else:
        raise ReductionStepInvalidError("reduction did not terminate")
    return current, tuple(steps)


def _covered_runs(covered: list[bool]) -> list[list[int]]:
    # Maximal runs of consecutive covered arcs on a circle that is not fully
    # covered (full cover is the cycle case, handled by the caller).
    m = len(covered)
    runs = []
    for i in range(m):
        if covered[i] and not covered[(i - 1) % m]:
            run = [i]
            j = (i + 1) % m
            while covered[j] and j != i:
                run.append(j)
                j = (j + 1) % m
            runs.append(run)
    return runs
