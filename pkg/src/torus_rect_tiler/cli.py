"""Command-line front end with exact rational I/O.

Exit codes: 0 success, 1 input or usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exact_math import Quadrant, Vec2, l1_norm, parse_rational, quadrant_of
from .lattice import (
    LatticeBasis,
    QuadrantBasis,
    enumerate_lattice_points,
    min_length,
)
from .skeleton import (
    CycleExistsError,
    InvalidTilingError,
    ReductionStepInvalidError,
    build_skeleton,
    decompose_axis_paths,
    reduce_tiling_with_trace,
    verify_tiling,
)
from .svg import render_tiling_svg
from .tiling import (
    Axis,
    AxisAlignedGeneratorError,
    Tiling,
    build_one_rect,
    build_optimal,
    build_two_rect,
    tiling_from_json_dict,
    tiling_length,
    tiling_to_json_dict,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2


class CliError(Exception):
    """Input problem; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; this tool reserves 2 for
    # verification failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_basis(text: str) -> LatticeBasis:
    parts = text.split()
    if len(parts) != 4:
        raise CliError(
            f"basis needs four rationals 'ux uy vx vy', got {len(parts)} items"
        )
    try:
        ux, uy, vx, vy = (parse_rational(p) for p in parts)
        return LatticeBasis(Vec2(ux, uy), Vec2(vx, vy))
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _load_tiling(path: str, basis_text) -> Tiling:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}") from None
    try:
        tiling = tiling_from_json_dict(doc)
    except ValueError as exc:
        raise CliError(f"bad tiling document in {path}: {exc}") from None
    if basis_text is not None and _parse_basis(basis_text) != tiling.basis:
        raise CliError("basis on the command line differs from the tiling file")
    return tiling


def _emit(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {output}: {exc}") from None


def _emit_json(doc, output) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", output)


def _sign_pair_from_basis(basis: LatticeBasis) -> QuadrantBasis:
    """Reuse the input vectors for a forced two-rectangle build.

    Needs one strictly off-axis same-sign vector and one opposite-sign vector,
    in either order; signs are canonicalized.
    """

    def canon_q1(w: Vec2) -> Vec2:
        return -w if (w.x < 0 or (w.x == 0 and w.y < 0)) else w

    def canon_q2(w: Vec2) -> Vec2:
        return -w if w.x > 0 else w

    for first, second in ((basis.u, basis.v), (basis.v, basis.u)):
        if quadrant_of(first) is Quadrant.Q1 and quadrant_of(second) is Quadrant.Q2:
            c1 = canon_q1(first)
            if c1.x * c1.y == 0:
                raise AxisAlignedGeneratorError(
                    f"{first} lies on an axis; the two-rectangle construction "
                    "does not apply"
                )
            return QuadrantBasis(c1, canon_q2(second))
    raise AxisAlignedGeneratorError(
        "basis does not split into a same-sign and an opposite-sign vector"
    )


def _cmd_minlen(args) -> int:
    basis = _parse_basis(args.basis)
    _emit_json(min_length(basis).to_json_dict(), args.output)
    return EXIT_OK


def _cmd_build(args) -> int:
    basis = _parse_basis(args.basis)
    try:
        if args.force == "one-rect-x":
            tiling = build_one_rect(basis, Axis.X)
        elif args.force == "one-rect-y":
            tiling = build_one_rect(basis, Axis.Y)
        elif args.force == "two-rect":
            tiling = build_two_rect(basis, _sign_pair_from_basis(basis))
        else:
            tiling = build_optimal(basis)
    except AxisAlignedGeneratorError as exc:
        raise CliError(str(exc)) from None
    _emit_json(tiling_to_json_dict(tiling), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    tiling = _load_tiling(args.tiling, args.basis)
    report = verify_tiling(tiling)
    _emit_json(report.to_json_dict(), args.output)
    return EXIT_OK if report.valid else EXIT_INVALID


def _cmd_skeleton(args) -> int:
    tiling = _load_tiling(args.tiling, args.basis)
    try:
        skeleton = build_skeleton(tiling)
    except InvalidTilingError as exc:
        print(f"invalid tiling: {exc}", file=sys.stderr)
        return EXIT_INVALID
    decomposition = decompose_axis_paths(skeleton)
    doc = {
        "vertices": [[str(w.rep.x), str(w.rep.y)] for w in skeleton.vertices],
        "edges": [
            {
                "origin": [str(e.origin.rep.x), str(e.origin.rep.y)],
                "axis": e.orientation.value,
                "length": str(e.length),
            }
            for e in skeleton.edges
        ],
        "total_length": str(skeleton.total_length),
        "cycles_h": len(decomposition.cycles_h),
        "paths_h": len(decomposition.paths_h),
        "cycles_v": len(decomposition.cycles_v),
        "paths_v": len(decomposition.paths_v),
    }
    _emit_json(doc, args.output)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    tiling = _load_tiling(args.tiling, args.basis)
    try:
        reduced, steps = reduce_tiling_with_trace(tiling)
    except CycleExistsError as exc:
        raise CliError(str(exc)) from None
    except InvalidTilingError as exc:
        print(f"invalid tiling: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ReductionStepInvalidError as exc:
        raise CliError(f"reduction failed: {exc}") from None
    doc = {
        "tiling": tiling_to_json_dict(reduced),
        "length": str(tiling_length(reduced)),
        "trace": [step.to_json_dict() for step in steps],
    }
    _emit_json(doc, args.output)
    return EXIT_OK


def _cmd_render(args) -> int:
    tiling = _load_tiling(args.tiling, args.basis)
    if args.width <= 0:
        raise CliError("--width must be positive")
    _emit(render_tiling_svg(tiling, width=args.width), args.output)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    basis = _parse_basis(args.basis)
    try:
        radius = parse_rational(args.radius)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if radius < 0:
        raise CliError("radius must be nonnegative")
    points = enumerate_lattice_points(basis, radius)

    best = {Quadrant.Q1: None, Quadrant.Q2: None}
    for pt in points:
        if pt.is_zero():
            continue
        if quadrant_of(pt) is Quadrant.Q1:
            w = -pt if (pt.x < 0 or (pt.x == 0 and pt.y < 0)) else pt
            side = Quadrant.Q1
        else:
            w = -pt if pt.x > 0 else pt
            side = Quadrant.Q2
        key = (l1_norm(w), w.y, w.x)
        if best[side] is None or key < best[side][0]:
            best[side] = (key, w)

    def minimum(side: Quadrant):
        if best[side] is None:
            return None
        _, w = best[side]
        return {"vector": [str(w.x), str(w.y)], "norm": str(l1_norm(w))}

    doc = {
        "radius": str(radius),
        "count": len(points),
        "points": [[str(p.x), str(p.y)] for p in points],
        "q1_min": minimum(Quadrant.Q1),
        "q2_min": minimum(Quadrant.Q2),
    }
    _emit_json(doc, args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="torus-rect-tiler",
        description=(
            "Exact minimum-length axis-aligned rectangular tilings of the flat "
            "torus defined by a rational lattice basis."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add_basis(p, required):
        p.add_argument(
            "-b",
            "--basis",
            required=required,
            metavar='"ux uy vx vy"',
            help="lattice basis as four rationals: first vector then second",
        )

    def add_output(p):
        p.add_argument("-o", "--output", help="write output here instead of stdout")

    p = sub.add_parser("minlen", help="minimum tiling length report")
    add_basis(p, True)
    add_output(p)
    p.set_defaults(handler=_cmd_minlen)

    p = sub.add_parser("build", help="construct a tiling as a JSON document")
    add_basis(p, True)
    p.add_argument(
        "--force",
        choices=("one-rect-x", "one-rect-y", "two-rect"),
        help="pick a construction instead of the optimal one",
    )
    add_output(p)
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("verify", help="check a tiling file against the torus")
    add_basis(p, False)
    p.add_argument("-t", "--tiling", required=True, help="tiling JSON file")
    add_output(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("skeleton", help="dump the skeleton graph of a tiling file")
    add_basis(p, False)
    p.add_argument("-t", "--tiling", required=True, help="tiling JSON file")
    add_output(p)
    p.set_defaults(handler=_cmd_skeleton)

    p = sub.add_parser("reduce", help="merge maximal axis paths to shorten a tiling")
    add_basis(p, False)
    p.add_argument("-t", "--tiling", required=True, help="tiling JSON file")
    add_output(p)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("render", help="render a tiling file to SVG")
    add_basis(p, False)
    p.add_argument("-t", "--tiling", required=True, help="tiling JSON file")
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--width", type=int, default=640, help="image width in pixels")
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("oracle", help="brute-force lattice point dump for cross-checks")
    add_basis(p, True)
    p.add_argument("--radius", required=True, help="l1 radius (rational)")
    add_output(p)
    p.set_defaults(handler=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
