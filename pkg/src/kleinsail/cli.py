"""Command-line surface: parse inputs, run the pipelines, emit JSON/SVG/OFF.

Exit codes: 0 success (certificate found where applicable), 1 conclusive
not-found, 2 malformed input, 3 operator not hyperbolic, 4 empty sail patch,
5 inconclusive within the sweep bound.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import verify as verify_mod
from .errors import EmptyPatch, KleinSailError, NotASymmetry, NotHyperbolic
from .intmat import IntMatrix, matrix_from_json, matrix_to_json
from .quadratic import (
    QuadraticSurd,
    _parse_cone_selector,
    cf_expand,
    eigen_slopes,
    is_cyclic_palindrome,
    klein_polygon,
    prop1_witness_search,
)
from .sail import export_patch, geocf_from_operator, sail_patch
from .symmetry import dirichlet_group, is_cf_symmetry, theorem_check

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_PARSE = 2
EXIT_NOT_HYPERBOLIC = 3
EXIT_EMPTY_PATCH = 4
EXIT_INCONCLUSIVE = 5

_SURD_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(-?\d+)$"
)


class InputError(Exception):
    pass


def parse_surd(text: str) -> QuadraticSurd:
    """Parse the inline form ``(P+sqrt(D))/Q`` (or ``-sqrt``)."""
    m = _SURD_RE.match(text.strip())
    if not m:
        raise InputError(
            f"cannot parse surd {text!r}: expected (P+sqrt(D))/Q, "
            "for example (0+sqrt(2))/1"
        )
    p, sign, d, q = int(m.group(1)), m.group(2), int(m.group(3)), int(m.group(4))
    if q == 0:
        raise InputError("surd denominator Q must be nonzero")
    if sign == "-":
        # (P - sqrt(D))/Q == (-P + sqrt(D))/(-Q)
        p, q = -p, -q
    return QuadraticSurd(p, q, d)


def _surd_from_args(args) -> QuadraticSurd:
    if getattr(args, "json", None):
        try:
            doc = json.loads(args.json)
            return QuadraticSurd(int(doc["P"]), int(doc["Q"]), int(doc["D"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad surd JSON: {exc}") from exc
    if getattr(args, "surd", None):
        return parse_surd(args.surd)
    raise InputError("provide a surd argument or --json")


def _matrix_from_args(args, size) -> IntMatrix:
    try:
        m = matrix_from_json(args.matrix)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc
    if m.n != size or any(len(row) != size for row in m.rows):
        raise InputError(f"matrix must be {size}x{size}")
    return m


def _surd_json(s: QuadraticSurd):
    return {"P": str(s.P), "Q": str(s.Q), "D": str(s.D)}


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(args, payload):
    data = payload if isinstance(payload, bytes) else payload.encode()
    if getattr(args, "output", None):
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


# --- subcommands ------------------------------------------------------------


def cmd_cf1d(args) -> int:
    s = _surd_from_args(args)
    cf = cf_expand(s)
    axes = is_cyclic_palindrome(cf.period)
    report = prop1_witness_search(s, args.height)
    witnesses = {}
    for cond in ("trace_zero", "trace_one", "norm_one", "norm_minus_one"):
        entry = {"status": report.status(cond)}
        w = report.witnesses.get(cond)
        if w is not None:
            entry.update(
                {
                    "matrix": matrix_to_json(w.matrix),
                    "height": str(w.height),
                    "omega": _surd_json(w.omega),
                    "trace": str(w.trace),
                    "norm": str(w.norm),
                }
            )
        witnesses[cond] = entry
    doc = {
        "surd": _surd_json(s),
        "preperiod": [str(a) for a in cf.preperiod],
        "period": [str(a) for a in cf.period],
        "palindrome": {
            "cyclic_palindrome": axes.is_palindrome,
            "axes": [
                {"type": ax.type, "position": str(ax.position)} for ax in axes.axes
            ],
        },
        "height_bound": str(args.height),
        "witnesses": witnesses,
    }
    _emit(args, _dump(doc))
    return EXIT_OK


def _sail2d_slopes(args):
    if args.matrix:
        a = _matrix_from_args(args, 2)
        return eigen_slopes(a)
    if args.surd or args.json:
        s = _surd_from_args(args)
        conj = QuadraticSurd(-s.P, -s.Q, s.D)  # the Galois conjugate slope
        return s.value(), conj.value()
    raise InputError("provide --matrix, a surd argument, or --json")


def cmd_sail2d(args) -> int:
    alpha, beta = _sail2d_slopes(args)
    try:
        cone = _parse_cone_selector(args.cone)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    verts = klein_polygon(alpha, beta, cone, args.count)
    if args.format == "json":
        doc = {
            "cone": [str(c) for c in cone],
            "vertices": [[str(x), str(y)] for x, y in verts],
        }
        _emit(args, _dump(doc))
        return EXIT_OK
    _emit(args, _render_svg(verts, alpha, beta))
    return EXIT_OK


def _render_svg(verts, alpha, beta) -> str:
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    lo_x, hi_x = min(min(xs), 0), max(max(xs), 1)
    lo_y, hi_y = min(min(ys), 0), max(max(ys), 1)
    pad = max(hi_x - lo_x, hi_y - lo_y, 1) / Fraction(20)
    lo_x, hi_x = Fraction(lo_x) - pad, Fraction(hi_x) + pad
    lo_y, hi_y = Fraction(lo_y) - pad, Fraction(hi_y) + pad
    w, h = hi_x - lo_x, hi_y - lo_y
    stroke = max(w, h) / 400

    def fx(v):
        return f"{float(v):.6f}"

    # y axis flipped so that the mathematical orientation is preserved
    def pt(x, y):
        return f"{fx(x - lo_x)},{fx(hi_y - y)}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {fx(w)} {fx(h)}">',
    ]
    far = float(max(hi_x, -lo_x, hi_y, -lo_y)) * 4
    for slope in (alpha, beta):
        t = float(slope)
        x1, y1 = -far - float(lo_x), float(hi_y) + far * t
        x2, y2 = far - float(lo_x), float(hi_y) - far * t
        lines.append(
            f'<line x1="{x1:.6f}" y1="{y1:.6f}" x2="{x2:.6f}" y2="{y2:.6f}" '
            f'stroke="#999" stroke-width="{fx(stroke)}" stroke-dasharray="4 2"/>'
        )
    points = " ".join(pt(x, y) for x, y in verts)
    lines.append(
        f'<polyline points="{points}" fill="none" stroke="#0057b7" '
        f'stroke-width="{fx(2 * stroke)}"/>'
    )
    for x, y in verts:
        lines.append(
            f'<circle cx="{pt(x, y).split(",")[0]}" cy="{pt(x, y).split(",")[1]}" '
            f'r="{fx(2 * stroke)}" fill="#d62828"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_sail3d(args) -> int:
    if len(args.cone) != 3 or any(ch not in "+-" for ch in args.cone):
        raise InputError(f"bad cone selector {args.cone!r}: expected e.g. +++")
    cone = tuple(1 if ch == "+" else -1 for ch in args.cone)
    a = _matrix_from_args(args, 3)
    g = geocf_from_operator(a)
    try:
        radius = Fraction(args.radius)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad radius {args.radius!r}") from exc
    patch = sail_patch(g, cone, radius)
    _emit(args, export_patch(patch, fmt=args.format))
    return EXIT_OK


def cmd_dirichlet(args) -> int:
    a = _matrix_from_args(args, 3)
    group = dirichlet_group(a, search_depth=args.depth)
    doc = {
        "torsion": matrix_to_json(group.torsion),
        "generators": [matrix_to_json(g) for g in group.generators],
        "commutant_basis": [matrix_to_json(b) for b in group.commutant_basis],
    }
    _emit(args, _dump(doc))
    return EXIT_OK


def cmd_symmetry(args) -> int:
    a = _matrix_from_args(args, 3)
    try:
        g = matrix_from_json(args.g)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad matrix for --g: {exc}") from exc
    try:
        rep = is_cf_symmetry(g, a)
    except NotASymmetry as exc:
        doc = {"symmetry": False, "reason": str(exc)}
        if exc.commutator is not None:
            doc["commutator"] = matrix_to_json(exc.commutator)
        _emit(args, _dump(doc))
        return EXIT_NOT_FOUND
    doc = {
        "symmetry": True,
        "kind": rep.kind,
        "det": str(rep.det),
        "sigma": [str(i) for i in rep.sigma] if rep.sigma else None,
        "g": matrix_to_json(rep.g),
    }
    _emit(args, _dump(doc))
    return EXIT_OK


def cmd_theorem(args) -> int:
    a = _matrix_from_args(args, 3)
    cert = theorem_check(a, depth=args.depth)
    _emit(args, cert.to_json())
    if cert.found:
        return EXIT_OK
    if cert.status == "not_palindromic":
        return EXIT_NOT_FOUND
    return EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    if args.suites:
        try:
            numbers = [verify_mod.suite_number(name) for name in args.suites]
        except KeyError as exc:
            raise InputError(f"unknown suite {exc.args[0]!r}") from exc
    else:
        numbers = None
    results = verify_mod.run(numbers)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_NOT_FOUND


# --- argument parser --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default already exits 2; keep explicit
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kleinsail", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    cf = sub.add_parser("cf1d", help="continued fraction and symmetry witnesses")
    cf.add_argument("surd", nargs="?", help="inline surd, e.g. (0+sqrt(2))/1")
    cf.add_argument("--json", help='surd as JSON {"P":..,"Q":..,"D":..}')
    cf.add_argument("--height", type=int, default=30, help="witness height bound")
    cf.add_argument("--output", help="write to file instead of stdout")
    cf.set_defaults(func=cmd_cf1d)

    s2 = sub.add_parser("sail2d", help="planar Klein polygon (SVG or JSON)")
    s2.add_argument("surd", nargs="?", help="boundary slope as inline surd")
    s2.add_argument("--json", help="boundary slope as JSON surd")
    s2.add_argument("--matrix", help="2x2 hyperbolic operator as JSON rows")
    s2.add_argument("--cone", default="++", help="cone sign pattern, e.g. +-")
    s2.add_argument("--count", type=int, default=8, help="number of vertices")
    s2.add_argument("--format", choices=("svg", "json"), default="svg")
    s2.add_argument("--output", help="write to file instead of stdout")
    s2.set_defaults(func=cmd_sail2d)

    s3 = sub.add_parser("sail3d", help="sail patch of a 3x3 operator (OFF/JSON)")
    s3.add_argument("matrix", help="3x3 operator as JSON rows")
    s3.add_argument("--cone", default="+++", help="cone sign pattern, e.g. ++-")
    s3.add_argument("--radius", default="6", help="eigencoordinate radius")
    s3.add_argument("--format", choices=("off", "json"), default="json")
    s3.add_argument("--output", help="write to file instead of stdout")
    s3.set_defaults(func=cmd_sail3d)

    di = sub.add_parser("dirichlet", help="symmetry group of the sail family")
    di.add_argument("matrix", help="3x3 operator as JSON rows")
    di.add_argument("--depth", type=int, default=10**4, help="search depth")
    di.add_argument("--output", help="write to file instead of stdout")
    di.set_defaults(func=cmd_dirichlet)

    sy = sub.add_parser("symmetry", help="test a candidate symmetry matrix")
    sy.add_argument("matrix", help="3x3 operator as JSON rows")
    sy.add_argument("--g", required=True, help="candidate symmetry as JSON rows")
    sy.add_argument("--output", help="write to file instead of stdout")
    sy.set_defaults(func=cmd_symmetry)

    th = sub.add_parser("theorem", help="search and certify a palindromic symmetry")
    th.add_argument("matrix", help="3x3 operator as JSON rows")
    th.add_argument("--depth", type=int, default=2000, help="sweep bound")
    th.add_argument("--output", help="write to file instead of stdout")
    th.set_defaults(func=cmd_theorem)

    ve = sub.add_parser("verify", help="run the acceptance suites")
    ve.add_argument("suites", nargs="*", help="suite names; default all")
    ve.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"kleinsail: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotHyperbolic as exc:
        print(f"kleinsail: not hyperbolic: {exc}", file=sys.stderr)
        return EXIT_NOT_HYPERBOLIC
    except EmptyPatch as exc:
        print(f"kleinsail: empty patch: {exc}", file=sys.stderr)
        return EXIT_EMPTY_PATCH
    except KleinSailError as exc:
        print(f"kleinsail: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
