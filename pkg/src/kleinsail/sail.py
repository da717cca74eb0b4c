"""Sails of hyperbolic 3x3 operators.

The eigenlines of a hyperbolic operator cut R^3 into eight simplicial cones;
the sail of a cone is the boundary of the convex hull of its nonzero lattice
points.  Everything here is decided exactly: the right/left eigenvectors live
in the charpoly field, eigencoordinates of lattice points are certified
interval images of field elements (never zero, by irreducibility), and hull
predicates are integer determinant signs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polys
from .errors import (
    EmptyPatch,
    FirstCoordinateZero,
    NotAUnit,
    NotHyperbolic,
    OnBoundary,
)
from .interval import RatInterval, precision_width
from .intmat import IntMatrix, RatMatrix, charpoly, det, is_hyperbolic, rat_solve
from .numfield import DEFAULT_WIDTH, FieldElement, NumberField, module_from_basis


class GeoCF:
    """Geometric continued fraction data of a hyperbolic operator.

    Holds the operator, its charpoly field (designated root = the dominant
    eigenvalue), the right eigenvector v = (1, alpha, beta) over the field,
    and the dual left eigenvector w with <w, v> = 1.  The i-th eigencoordinate
    of a rational point x is sigma_i(<w, x>).
    """

    def __init__(self, a: IntMatrix, field: NumberField, v, w):
        self.a = a
        self.field = field
        self.v = tuple(v)  # (1, alpha, beta)
        self.w = tuple(w)

    @property
    def alpha(self):
        return self.v[1]

    @property
    def beta(self):
        return self.v[2]

    def pairing(self, x) -> FieldElement:
        """<w, x> for a rational vector x; zero only for x = 0."""
        acc = self.field.zero()
        for wi, xi in zip(self.w, x):
            acc = acc + wi * Fraction(xi)
        return acc

    def xi_interval(self, x, i, width=DEFAULT_WIDTH) -> RatInterval:
        """Certified interval for the i-th eigencoordinate of x."""
        return self.field.embed(self.pairing(x), i, width)

    def xi_sign(self, x, i) -> int:
        """Exact sign of the i-th eigencoordinate of a nonzero lattice point."""
        e = self.pairing(x)
        if e.is_zero():
            raise OnBoundary(f"{x} pairs to zero")
        if e.is_rational():
            return 1 if e.coords[0] > 0 else -1
        w = Fraction(1, 2**16)
        while True:
            s = self.field.embed(e, i, w).sign()
            if s is not None:
                return s
            w = w * w

    def xi_abs_le(self, x, i, bound) -> bool:
        """Exact decision of |xi_i(x)| <= bound for rational bound."""
        e = self.pairing(x)
        bound = Fraction(bound)
        if e.is_rational():
            return abs(e.coords[0]) <= bound
        w = Fraction(1, 2**16)
        while True:
            iv = self.field.embed(e, i, w).abs()
            if iv.hi <= bound:
                return True
            if iv.lo > bound:
                return False
            w = w * w

    def eigenvector_intervals(self, i, width=DEFAULT_WIDTH):
        """Interval approximation of the i-th eigenvector (1, s_i(alpha), s_i(beta))."""
        return tuple(self.field.embed(c, i, width) for c in self.v)

    def dominant_bound(self) -> Fraction:
        """Rational upper bound for the dominant |eigenvalue|."""
        iv = self.field.embedding_interval(1, Fraction(1, 2**24))
        return max(abs(iv.lo), abs(iv.hi))


def geocf_from_operator(a: IntMatrix) -> GeoCF:
    """Exact eigendata of a hyperbolic 3x3 operator.

    The right eigenvector is solved over K = Q[x]/(charpoly) and normalized to
    first coordinate 1 (FirstCoordinateZero if that is impossible); the left
    eigenvector is normalized against it.
    """
    if a.n != 3:
        raise NotHyperbolic("operator must be 3x3")
    if not is_hyperbolic(a):
        raise NotHyperbolic(f"{a!r} is not hyperbolic")
    f = charpoly(a)
    roots = [RatInterval(*iv) for iv in polys.isolate_real_roots(f)]
    # designated root = dominant eigenvalue (|.| maximal); abs values are
    # distinct for an irreducible cubic with nonzero determinant
    dom = _dominant_index(f, roots)
    field = NumberField(f, theta_index=dom)
    v = _right_eigenvector(a, field)
    w0 = _right_eigenvector(a.transpose(), field)
    scale = sum((wi * vi for wi, vi in zip(w0, v)), field.zero())
    if scale.is_zero():  # pragma: no cover - impossible for simple eigenvalues
        raise FirstCoordinateZero("degenerate left/right pairing")
    inv = scale.inverse()
    w = tuple(wi * inv for wi in w0)
    return GeoCF(a, field, v, w)


def _dominant_index(f, roots):
    from .polys import refine_root

    ivs = [(iv.lo, iv.hi) for iv in roots]
    while True:
        mags = [(abs(lo), abs(hi)) for lo, hi in ivs]
        mags = [(min(a, b) if lo * hi > 0 else Fraction(0), max(a, b)) for (a, b), (lo, hi) in zip(mags, ivs)]
        order = sorted(range(len(ivs)), key=lambda k: mags[k][1], reverse=True)
        best = order[0]
        if all(mags[best][0] > mags[k][1] for k in order[1:]):
            return best
        ivs = [refine_root(f, iv, (iv[1] - iv[0]) / 4) for iv in ivs]


def _right_eigenvector(a: IntMatrix, field: NumberField):
    """Solve (a - theta I) v = 0 with v = (1, alpha, beta) over the field."""
    th = field.theta()
    m = [
        [field.from_rational(a.rows[i][j]) - (th if i == j else 0) for j in range(3)]
        for i in range(3)
    ]
    for i in range(3):
        for j in range(i + 1, 3):
            d = m[i][1] * m[j][2] - m[i][2] * m[j][1]
            if d.is_zero():
                continue
            inv = d.inverse()
            alpha = ((-m[i][0]) * m[j][2] - m[i][2] * (-m[j][0])) * inv
            beta = (m[i][1] * (-m[j][0]) - (-m[i][0]) * m[j][1]) * inv
            v = (field.one(), alpha, beta)
            for row in m:
                res = sum((row[k] * v[k] for k in range(3)), field.zero())
                if not res.is_zero():
                    raise FirstCoordinateZero("no eigenvector with first coordinate 1")
            return v
    raise FirstCoordinateZero("no eigenvector with first coordinate 1")


def geocf_from_unit(basis, eps: FieldElement) -> IntMatrix:
    """The integer matrix B with B (1, a1, a2)^T = eps (1, a1, a2)^T.

    basis = (1, a1, a2) must span a full module M with eps a unit of M;
    det B = norm(eps).
    """
    basis = list(basis)
    field = basis[0].field
    if basis[0] != field.one():
        raise ValueError("basis must start with 1")
    m = module_from_basis(basis)
    coord_mat = RatMatrix([b.coords for b in basis])  # rows = basis coords
    rows = []
    for b in basis:
        target = (eps * b).coords
        # solve c . coord_mat = target  <=>  coord_mat^T c^T = target^T
        sol = rat_solve(RatMatrix(list(zip(*coord_mat.rows))), list(target))
        if any(x.denominator != 1 for x in sol):
            raise NotAUnit(f"{eps!r} does not preserve the module")
        rows.append([int(x) for x in sol])
    b_mat = IntMatrix(rows)
    if abs(det(b_mat)) != 1:
        raise NotAUnit(f"{eps!r} has norm {eps.norm()}, not a unit")
    return b_mat


# --- cones ------------------------------------------------------------------


def locate_cone(p, g: GeoCF):
    """Sign pattern of the eigencoordinates of p (exact for rational points).

    Interval points are accepted and decided when every coordinate sign is
    determined; otherwise OnBoundary.
    """
    if any(isinstance(c, RatInterval) for c in p):
        return _locate_cone_interval(p, g)
    if all(Fraction(c) == 0 for c in p):
        raise OnBoundary("origin lies on every eigenplane")
    signs = []
    for i in (1, 2, 3):
        e = g.pairing(p)
        if e.is_zero():
            raise OnBoundary(f"{p} lies on an eigenplane")
        signs.append(g.xi_sign(p, i))
    return tuple(signs)


def _locate_cone_interval(p, g):
    p = [c if isinstance(c, RatInterval) else RatInterval(Fraction(c)) for c in p]
    for width in (Fraction(1, 2**32), Fraction(1, 2**64)):
        signs = []
        for i in (1, 2, 3):
            w_iv = [g.field.embed(wc, i, width) for wc in g.w]
            acc = RatInterval(Fraction(0))
            for wi, pi in zip(w_iv, p):
                acc = acc + wi * pi
            signs.append(acc.sign())
        if all(s is not None for s in signs):
            return tuple(signs)
    raise OnBoundary(f"signs of {p} undecidable at interval precision")


def antipode(cone):
    return tuple(-s for s in cone)


ALL_CONES = tuple(
    (s1, s2, s3) for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1)
)


def cone_action(g_matrix: IntMatrix, g: GeoCF):
    """The permutation of the eight cones induced by a symmetry matrix."""
    samples = _cone_samples_3d(g)
    return {c: locate_cone(g_matrix.apply(samples[c]), g) for c in ALL_CONES}


def _cone_samples_3d(g: GeoCF):
    samples = {}
    for radius in range(1, 32):
        for x in range(-radius, radius + 1):
            for y in range(-radius, radius + 1):
                for z in range(-radius, radius + 1):
                    if (x, y, z) == (0, 0, 0):
                        continue
                    try:
                        c = locate_cone((x, y, z), g)
                    except OnBoundary:  # pragma: no cover - lattice points never on planes
                        continue
                    if c not in samples:
                        samples[c] = (x, y, z)
        if len(samples) == 8:
            return samples
    raise RuntimeError("failed to sample all eight cones")  # pragma: no cover


# --- sail patches -----------------------------------------------------------


@dataclass(frozen=True)
class SailPatch:
    cone: tuple
    search_radius: Fraction
    vertices: tuple  # ((x, y, z), ...)
    certified: tuple  # booleans, aligned with vertices
    faces: tuple  # tuples of vertex indices

    def certified_vertices(self):
        return tuple(v for v, c in zip(self.vertices, self.certified) if c)


def sail_patch(g: GeoCF, cone, radius) -> SailPatch:
    """Sail patch of a cone: hull of the lattice points with all
    |eigencoordinates| <= radius, restricted to its origin-facing boundary.

    A vertex is certified (an exact sail vertex) when its eigencoordinates are
    <= radius/margin with margin the dominant |eigenvalue|: truncation cannot
    dislodge it.  Uncertified fringe vertices are reported flagged.
    """
    cone = tuple(cone)
    if cone not in ALL_CONES:
        raise ValueError(f"bad cone {cone!r}")
    radius = Fraction(radius)
    pts = _enumerate_patch_points(g, cone, radius)
    if not pts:
        raise EmptyPatch(f"no lattice points in cone {cone} within radius {radius}")
    verts, faces = _sail_boundary(pts)
    margin = g.dominant_bound()
    safe = radius / margin
    certified = tuple(
        all(g.xi_abs_le(v, i, safe) for i in (1, 2, 3)) for v in verts
    )
    return SailPatch(cone, radius, tuple(verts), certified, tuple(faces))


def _enumerate_patch_points(g: GeoCF, cone, radius):
    """Exact enumeration of cone lattice points with all |xi_i| <= radius.

    A float eigencoordinate grid prefilters with a safety margin; borderline
    candidates are re-decided by exact interval arithmetic.
    """
    width = precision_width(48)
    v_iv = [g.eigenvector_intervals(i, width) for i in (1, 2, 3)]
    w_f = np.array(
        [[float(g.field.embed(wc, i, width).mid) for wc in g.w] for i in (1, 2, 3)]
    )
    rf = float(radius)
    box = [0, 0, 0]
    for j in range(3):
        bound = float(radius) * sum(abs(float(v_iv[i - 1][j].mid)) for i in (1, 2, 3))
        box[j] = math.ceil(bound * (1 + 1e-9)) + 1
    ax = [np.arange(-b, b + 1, dtype=np.int64) for b in box]
    X, Y, Z = np.meshgrid(*ax, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1)
    xi = pts @ w_f.T
    eps = 1e-6 * (1.0 + np.abs(pts).sum(axis=1))
    mask = np.ones(len(pts), dtype=bool)
    for i in range(3):
        mask &= cone[i] * xi[:, i] > -eps
        mask &= np.abs(xi[:, i]) <= rf + eps
    mask &= np.any(pts != 0, axis=1)
    # decisive float margins are trusted (error ~1e-12 relative vs 1e-6
    # margin); only boundary-near candidates are re-decided exactly
    out = []
    cand = pts[mask]
    xi_c = xi[mask]
    eps_c = eps[mask]
    for p, xs, e in zip(cand, xi_c, eps_c):
        x = tuple(int(c) for c in p)
        ok = True
        for i in (1, 2, 3):
            val = cone[i - 1] * xs[i - 1]
            if val < e and g.xi_sign(x, i) != cone[i - 1]:
                ok = False
                break
            if abs(xs[i - 1]) > rf - e and not g.xi_abs_le(x, i, radius):
                ok = False
                break
        if ok:
            out.append(x)
    return sorted(out)


def _orient(a, b, c, d):
    """Sign of det(b-a, c-a, d-a): + if d on the positive side of plane abc."""
    m = [
        [b[0] - a[0], b[1] - a[1], b[2] - a[2]],
        [c[0] - a[0], c[1] - a[1], c[2] - a[2]],
        [d[0] - a[0], d[1] - a[1], d[2] - a[2]],
    ]
    v = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return (v > 0) - (v < 0)


def convex_hull_3d(points):
    """Incremental exact hull; returns triangles (i,j,k) with outward
    orientation, or None if the points are coplanar."""
    pts = list(points)
    n = len(pts)
    if n < 4:
        return None
    # initial non-degenerate tetrahedron
    i0 = 0
    i1 = next((i for i in range(n) if pts[i] != pts[i0]), None)
    if i1 is None:
        return None
    i2 = next(
        (i for i in range(n) if _noncollinear(pts[i0], pts[i1], pts[i])), None
    )
    if i2 is None:
        return None
    i3 = next((i for i in range(n) if _orient(pts[i0], pts[i1], pts[i2], pts[i]) != 0), None)
    if i3 is None:
        return None
    if _orient(pts[i0], pts[i1], pts[i2], pts[i3]) > 0:
        i0, i1 = i1, i0
    faces = {
        (i0, i1, i2): True,
        (i0, i2, i3): True,
        (i0, i3, i1): True,
        (i1, i3, i2): True,
    }
    used = {i0, i1, i2, i3}
    for ip in range(n):
        if ip in used:
            continue
        p = pts[ip]
        visible = [f for f in faces if _orient(pts[f[0]], pts[f[1]], pts[f[2]], p) > 0]
        if not visible:
            continue
        horizon = {}
        for f in visible:
            for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
                if (e[1], e[0]) in horizon:
                    del horizon[(e[1], e[0])]
                else:
                    horizon[e] = True
        for f in visible:
            del faces[f]
        for (u, vtx) in horizon:
            faces[(u, vtx, ip)] = True
    return list(faces)


def _noncollinear(a, b, c):
    ux, uy, uz = b[0] - a[0], b[1] - a[1], b[2] - a[2]
    vx, vy, vz = c[0] - a[0], c[1] - a[1], c[2] - a[2]
    return (
        uy * vz - uz * vy != 0 or uz * vx - ux * vz != 0 or ux * vy - uy * vx != 0
    )


def _sail_boundary(pts):
    """Origin-facing part of hull(pts): merged faces + their vertex list."""
    tris = convex_hull_3d(pts)
    if tris is None:
        # degenerate flat patch: report extreme points, no 3D faces
        verts = _planar_extremes(pts)
        face = tuple(range(len(verts))) if len(verts) >= 3 else ()
        return verts, ([face] if face else [])
    o = (0, 0, 0)
    visible = [
        t for t in tris if _orient(pts[t[0]], pts[t[1]], pts[t[2]], o) > 0
    ]
    if not visible:  # pragma: no cover - origin is always outside the hull
        visible = tris
    merged = _merge_coplanar(pts, visible)
    vset = sorted({i for f in merged for i in f})
    remap = {i: k for k, i in enumerate(vset)}
    verts = [pts[i] for i in vset]
    faces = [tuple(remap[i] for i in f) for f in merged]
    return verts, faces


def _planar_extremes(pts):
    if len(pts) <= 2:
        return list(pts)
    # project out a direction with nonzero spread and run a 2D hull
    a = pts[0]
    b = next(p for p in pts if p != a)
    axes = [(0, 1), (0, 2), (1, 2)]
    for ax in axes:
        proj = [(p[ax[0]], p[ax[1]]) for p in pts]
        if len(set(proj)) == len(pts):
            hull2 = _hull2d(proj)
            back = {pp: p for pp, p in zip(proj, pts)}
            return [back[h] for h in hull2]
    return sorted(set(pts))  # pragma: no cover


def _hull2d(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _merge_coplanar(pts, tris):
    """Group hull triangles by their supporting plane and trace each boundary."""
    groups = {}
    for t in tris:
        key = _plane_key(pts[t[0]], pts[t[1]], pts[t[2]])
        groups.setdefault(key, []).append(t)
    faces = []
    for key, ts in groups.items():
        edges = {}
        for t in ts:
            for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                if (e[1], e[0]) in edges:
                    del edges[(e[1], e[0])]
                else:
                    edges[e] = True
        nxt = {u: v for (u, v) in edges}
        start = min(nxt)
        cyc = [start]
        cur = nxt[start]
        while cur != start:
            cyc.append(cur)
            cur = nxt[cur]
        faces.append(tuple(cyc))
    return sorted(faces, key=lambda f: tuple(pts[i] for i in f))


def _plane_key(a, b, c):
    nx = (b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1])
    ny = (b[2] - a[2]) * (c[0] - a[0]) - (b[0] - a[0]) * (c[2] - a[2])
    nz = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    g = math.gcd(nx, ny, nz)
    nx, ny, nz = nx // g, ny // g, nz // g
    lead = next(c for c in (nx, ny, nz) if c != 0)
    if lead < 0:
        nx, ny, nz = -nx, -ny, -nz
    off = nx * a[0] + ny * a[1] + nz * a[2]
    return (nx, ny, nz, off)


# --- export -----------------------------------------------------------------


def export_patch(p: SailPatch, fmt="json") -> bytes:
    """OFF polyhedral mesh or structured JSON (numbers as strings)."""
    if fmt.lower() == "off":
        lines = ["OFF", f"{len(p.vertices)} {len(p.faces)} 0"]
        for v, c in zip(p.vertices, p.certified):
            flag = "" if c else "  # uncertified"
            lines.append(f"{v[0]} {v[1]} {v[2]}{flag}")
        for f in p.faces:
            lines.append(" ".join(str(x) for x in (len(f), *f)))
        return ("\n".join(lines) + "\n").encode()
    if fmt.lower() == "json":
        doc = {
            "cone": [str(s) for s in p.cone],
            "radius": str(p.search_radius),
            "vertices": [
                {"coords": [str(c) for c in v], "certified": cert}
                for v, cert in zip(p.vertices, p.certified)
            ],
            "faces": [[str(i) for i in f] for f in p.faces],
        }
        return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def patch_from_json(data) -> SailPatch:
    doc = json.loads(data)
    return SailPatch(
        tuple(int(s) for s in doc["cone"]),
        Fraction(doc["radius"]),
        tuple(tuple(int(c) for c in v["coords"]) for v in doc["vertices"]),
        tuple(bool(v["certified"]) for v in doc["vertices"]),
        tuple(tuple(int(i) for i in f) for f in doc["faces"]),
    )
