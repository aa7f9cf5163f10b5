"""Exact minimum-length axis-aligned rectangular tilings of flat tori.

Given a rational lattice basis, this package computes the exact minimum total
edge length over all axis-aligned rectangular tilings of the quotient torus,
constructs an optimal tiling (one or two rectangles), verifies arbitrary
tilings, and reduces them through skeleton-graph analysis.
"""

from .exact_math import (
    BothZeroError,
    Quadrant,
    Vec2,
    format_rational,
    l1_norm,
    parse_rational,
    quadrant_of,
    rat_gcd,
)
from .lattice import (
    AxisPeriods,
    LatticeBasis,
    MinLengthReport,
    QuadrantBasis,
    SingularBasisError,
    Winner,
    axis_periods,
    basis_coordinates,
    contains,
    covolume,
    enumerate_lattice_points,
    lattice_point,
    lattice_points_in_box,
    min_length,
    quadrant_basis,
)
from .skeleton import (
    AxisPathDecomposition,
    CycleExistsError,
    InvalidTilingError,
    Orientation,
    ReductionStep,
    ReductionStepInvalidError,
    Skeleton,
    SkeletonEdge,
    TorusPoint,
    VerificationReport,
    Violation,
    ViolationKind,
    build_skeleton,
    canonicalize,
    decompose_axis_paths,
    reduce_tiling,
    reduce_tiling_with_trace,
    verify_tiling,
)
from .svg import render_tiling_svg
from .tiling import (
    Axis,
    AxisAlignedGeneratorError,
    Rect,
    Tiling,
    build_one_rect,
    build_optimal,
    build_two_rect,
    tiling_from_json_dict,
    tiling_length,
    tiling_to_json_dict,
)

__all__ = [
    "Axis",
    "AxisAlignedGeneratorError",
    "AxisPathDecomposition",
    "AxisPeriods",
    "BothZeroError",
    "CycleExistsError",
    "InvalidTilingError",
    "LatticeBasis",
    "MinLengthReport",
    "Orientation",
    "Quadrant",
    "QuadrantBasis",
    "Rect",
    "ReductionStep",
    "ReductionStepInvalidError",
    "SingularBasisError",
    "Skeleton",
    "SkeletonEdge",
    "Tiling",
    "TorusPoint",
    "Vec2",
    "VerificationReport",
    "Violation",
    "ViolationKind",
    "Winner",
    "axis_periods",
    "basis_coordinates",
    "build_one_rect",
    "build_optimal",
    "build_skeleton",
    "build_two_rect",
    "canonicalize",
    "contains",
    "covolume",
    "decompose_axis_paths",
    "enumerate_lattice_points",
    "format_rational",
    "l1_norm",
    "lattice_point",
    "lattice_points_in_box",
    "min_length",
    "parse_rational",
    "quadrant_basis",
    "quadrant_of",
    "rat_gcd",
    "reduce_tiling",
    "reduce_tiling_with_trace",
    "render_tiling_svg",
    "tiling_from_json_dict",
    "tiling_length",
    "tiling_to_json_dict",
    "verify_tiling",
]
