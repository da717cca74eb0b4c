"""Symmetries of algebraic geometric continued fractions in R^3.

A symmetry of CF(A) is a G in GL3(Z) permuting the eigenlines of A; it is
Dirichlet when it fixes each line (equivalently GA = AG) and palindromic when
it permutes them by a 3-cycle.  This module decides and classifies symmetries
exactly, computes a rank-2 unit pair generating the Dirichlet group, searches
for palindromic symmetries through module similarity (gamma * tau(M) = M),
reduces any palindromic symmetry to one of the four canonical matrices F1-F4
by the shrinking-triangle procedure, and verifies the trace/norm condition of
the corresponding class on the canonical eigenvector.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .errors import (
    ConditionViolated,
    InsufficientDepth,
    NotASymmetry,
    NotGalois,
    NoUnitFound,
    NotHyperbolic,
    NonGaloisObstruction,
    RankDeficient,
    StructureViolation,
)
from .intmat import (
    IntMatrix,
    RatMatrix,
    commutant_lattice,
    det,
    integer_kernel,
    inverse_rat,
    is_hyperbolic,
    lll_reduce,
    primitive_vector,
)
from .numfield import (
    FieldElement,
    NumberField,
    automorphisms,
    colon_module,
    module_from_basis,
    multiplier_ring,
    scale_module,
)
from .interval import precision_width
from .polys import IntPolynomial
from .sail import GeoCF, cone_action, geocf_from_operator, geocf_from_unit, locate_cone

F_MATRICES = {
    1: IntMatrix([[1, 0, 0], [0, 0, 1], [0, -1, -1]]),
    2: IntMatrix([[1, 0, 0], [0, 0, 1], [1, -1, -1]]),
    3: IntMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    4: IntMatrix([[0, 0, 1], [-1, 0, 0], [0, -1, 0]]),
}

CLASS_CONDITIONS = {1: "trace_zero", 2: "trace_one", 3: "norm_one", 4: "norm_minus_one"}

IDENTITY_SIGMA = (1, 2, 3)


def _int_inverse(g: IntMatrix) -> IntMatrix:
    return inverse_rat(g).to_integer()


def _ipow(g: IntMatrix, k: int) -> IntMatrix:
    if k >= 0:
        return g**k
    return _int_inverse(g) ** (-k)


# --- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class Order3Data:
    g_plus: IntMatrix
    g_minus: IntMatrix
    g_cubed_sign: int
    invariant_line: tuple
    invariant_plane_normal: tuple
    fixed_cone: tuple


@dataclass(frozen=True)
class SymmetryReport:
    g: IntMatrix
    kind: str  # "dirichlet" | "palindromic"
    sigma: tuple  # images of embeddings (sigma(1), sigma(2), sigma(3))
    det: int
    order3: Order3Data | None = None


@dataclass(frozen=True)
class DirichletGroup:
    torsion: IntMatrix
    generators: tuple
    commutant_basis: tuple


@dataclass(frozen=True)
class PalindromeCertificate:
    found: bool
    status: str  # "found" | "not_palindromic" | "inconclusive"
    sweep_bound: int
    g: IntMatrix | None = None
    kind: str | None = None
    sigma: tuple | None = None
    det: int | None = None
    case: str | None = None  # "a" | "b"
    z: tuple | None = None
    w: tuple | None = None
    conjugators: dict = dfield(default_factory=dict)  # class id -> details dict
    canonical_form: int | None = None
    X: IntMatrix | None = None
    omega_minpoly: IntPolynomial | None = None
    condition: str | None = None
    trace: Fraction | None = None
    norm: Fraction | None = None

    def to_json(self) -> bytes:
        def mat(m):
            return [[str(x) for x in row] for row in m.rows] if m is not None else None

        doc = {
            "found": self.found,
            "status": self.status,
            "sweep_bound": str(self.sweep_bound),
            "kind": self.kind,
            "sigma": [str(s) for s in self.sigma] if self.sigma else None,
            "det": str(self.det) if self.det is not None else None,
            "case": self.case,
            "g": mat(self.g),
            "z": [[str(c) for c in v] for v in self.z] if self.z else None,
            "w": [str(c) for c in self.w] if self.w else None,
            "X": mat(self.X),
            "canonical_form": str(self.canonical_form) if self.canonical_form else None,
            "omega_minpoly": [str(c) for c in self.omega_minpoly.coeffs]
            if self.omega_minpoly
            else None,
            "condition": self.condition,
            "trace": str(self.trace) if self.trace is not None else None,
            "norm": str(self.norm) if self.norm is not None else None,
            "conjugators": {
                str(k): {
                    "X": mat(v["X"]),
                    "condition": v["condition"],
                    "omega_minpoly": [str(c) for c in v["omega_minpoly"].coeffs],
                    "trace": str(v["trace"]),
                    "norm": str(v["norm"]),
                }
                for k, v in sorted(self.conjugators.items())
            },
        }
        return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


# --- symmetry testing -------------------------------------------------------


def is_cf_symmetry(g: IntMatrix, a: IntMatrix, geocf: GeoCF | None = None) -> SymmetryReport:
    """Exact symmetry test and classification.

    g is a symmetry iff g a g^-1 commutes with a (the commutant is Q[a] for an
    irreducible charpoly, so this says the eigenline set is preserved).  The
    eigenline permutation is recovered by exact proportionality of g*v against
    automorphism images of the eigenvector v.
    """
    if abs(det(g)) != 1:
        raise NotASymmetry("g is not unimodular")
    if not is_hyperbolic(a):
        raise NotHyperbolic(f"{a!r} is not hyperbolic")
    conj = g * a * _int_inverse(g)
    comm = conj * a - a * conj
    if comm != IntMatrix.zero(a.n):
        raise NotASymmetry("conjugate does not commute with the operator", commutator=comm)
    if g * a == a * g:
        return SymmetryReport(g, "dirichlet", IDENTITY_SIGMA, det(g))
    gg = geocf if geocf is not None else geocf_from_operator(a)
    sigma = _eigenline_permutation(g, gg)
    o3 = order3_analysis(g, a, geocf=gg, _sigma=sigma)
    return SymmetryReport(g, "palindromic", sigma, det(g), o3)


def _eigenline_permutation(g: IntMatrix, gg: GeoCF):
    field = gg.field
    v = gg.v
    gv = tuple(
        sum((field.from_rational(g.rows[i][j]) * v[j] for j in range(3)), field.zero())
        for i in range(3)
    )
    mu = gv[0]
    if mu.is_zero():  # pragma: no cover - g*v has nonzero first coordinate
        raise StructureViolation("image eigenvector has zero first coordinate")
    for t in automorphisms(field)[1:]:
        vt = (field.one(), _subst(gg.alpha, t), _subst(gg.beta, t))
        if all(gv[i] == mu * vt[i] for i in range(3)):
            perm = field.embedding_permutation(t)
            return tuple(perm[i] for i in (1, 2, 3))
    raise NonGaloisObstruction(
        "no field automorphism matches the eigenline action"
    )


def _subst(e: FieldElement, image: FieldElement) -> FieldElement:
    """e with theta replaced by image (ring substitution)."""
    return e.apply_poly_image(image)


def g_plus_minus(g: IntMatrix):
    """(G+, G-) = ((det G) G, -(det G) G); G+ has determinant +1."""
    d = det(g)
    return (g * d, g * (-d))


def order3_analysis(g: IntMatrix, a: IntMatrix, geocf: GeoCF | None = None, _sigma=None) -> Order3Data:
    """Structure data of a palindromic symmetry: cube sign, rational invariant
    line and plane, and the cone fixed by G+."""
    cube = g * g * g
    ident = IntMatrix.identity(3)
    if cube == ident:
        sign = 1
    elif cube == -ident:
        sign = -1
    else:
        raise StructureViolation(f"g^3 = {cube!r} is not +-I")
    ker_plus = integer_kernel((g - ident * sign).rows)
    ker_minus = integer_kernel((g + ident * sign).rows)
    if len(ker_plus) != 1 or len(ker_minus) != 0:
        raise StructureViolation("invariant line is not one-dimensional")
    line = primitive_vector(ker_plus[0])
    ker_t = integer_kernel((g.transpose() - ident * sign).rows)
    if len(ker_t) != 1:
        raise StructureViolation("invariant plane normal is not unique")
    normal = primitive_vector(ker_t[0])
    pairing = sum(x * y for x, y in zip(line, normal))
    if pairing == 0:
        raise StructureViolation("invariant line lies in the invariant plane")
    gg = geocf if geocf is not None else geocf_from_operator(a)
    gp, gm = g_plus_minus(g)
    fixed = locate_cone(line, gg)
    return Order3Data(gp, gm, sign, line, normal, fixed)


def cone_orbit_structure(g_matrix: IntMatrix, gg: GeoCF):
    """Cycle decomposition of the cone permutation induced by g_matrix."""
    act = cone_action(g_matrix, gg)
    seen = set()
    cycles = []
    for c in sorted(act):
        if c in seen:
            continue
        cyc = [c]
        seen.add(c)
        cur = act[c]
        while cur != c:
            cyc.append(cur)
            seen.add(cur)
            cur = act[cur]
        cycles.append(tuple(cyc))
    return cycles


# --- Dirichlet group --------------------------------------------------------


def _shell_vectors(rank, k):
    """Integer vectors with L-inf norm exactly k, lexicographic order."""
    if k == 0:
        yield (0,) * rank
        return
    rng = range(-k, k + 1)

    def rec(prefix, has_k):
        if len(prefix) == rank:
            if has_k:
                yield tuple(prefix)
            return
        for x in rng:
            yield from rec(prefix + [x], has_k or abs(x) == k)

    yield from rec([], False)


def _det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def dirichlet_group(a: IntMatrix, search_depth: int = 10**4) -> DirichletGroup:
    """A commuting, independent unit pair generating (with -I) a finite-index
    subgroup of Dir(a) = {G : Ga = aG, det G = +-1}.

    Units are enumerated on the commutant lattice, mapped to log-embedding
    vectors, and reduced to a short pair by Gauss reduction; independence is
    certified exactly by the absence of power relations e1^p e2^q = +-I for
    |p|, |q| <= 5.
    """
    if not is_hyperbolic(a) or a.n != 3:
        raise NotHyperbolic(f"{a!r} is not a hyperbolic 3x3 operator")
    basis = commutant_lattice(a)
    gg = geocf_from_operator(a)
    units = []
    seen = set()
    count = 0
    k = 0
    while count < search_depth:
        k += 1
        for x in _shell_vectors(3, k):
            count += 1
            rows = [
                [sum(x[t] * basis[t].rows[i][j] for t in range(3)) for j in range(3)]
                for i in range(3)
            ]
            if abs(_det3(rows)) != 1:
                continue
            e = IntMatrix(rows)
            if e == IntMatrix.identity(3) or e == -IntMatrix.identity(3):
                continue
            key = min(e.rows, (-e).rows)
            if key in seen:
                continue
            seen.add(key)
            units.append(e)
            if count >= search_depth:
                break
        if k > 40:  # pragma: no cover - depth exhausts first
            break
    pair = _reduce_unit_pair(units, gg)
    if pair is None:
        raise InsufficientDepth(
            f"fewer than two independent units within {search_depth} candidates"
        )
    e1, e2 = pair
    if e1 * a != a * e1 or e2 * a != a * e2 or e1 * e2 != e2 * e1:
        raise StructureViolation("unit generators fail commutation")  # pragma: no cover
    _certify_independence(e1, e2)
    return DirichletGroup(-IntMatrix.identity(3), (e1, e2), tuple(basis))


def _log_vector(e: IntMatrix, gg: GeoCF):
    lam = _unit_eigenvalue(e, gg)
    width = precision_width(40)
    out = []
    for i in (1, 2):
        iv = gg.field.embed(lam, i, width).abs()
        out.append(math.log(float(iv.mid)))
    return out


def _unit_eigenvalue(e: IntMatrix, gg: GeoCF) -> FieldElement:
    """The eigenvalue of a commuting unit on the designated eigenline."""
    row = e.rows[0]
    return sum(
        (gg.field.from_rational(row[j]) * gg.v[j] for j in range(3)), gg.field.zero()
    )


def _reduce_unit_pair(units, gg):
    recs = []
    for e in units:
        v = _log_vector(e, gg)
        recs.append((v[0] * v[0] + v[1] * v[1], v, e))
    recs.sort(key=lambda r: r[0])
    nontrivial = [r for r in recs if r[0] > 1e-12]
    if not nontrivial:
        return None
    _, b1, e1 = nontrivial[0]
    b2 = e2 = None
    for _, v, e in nontrivial[1:]:
        if abs(b1[0] * v[1] - b1[1] * v[0]) > 1e-9:
            b2, e2 = v, e
            break
    if b2 is None:
        return None
    # Gauss reduction of the log pair, mirrored on the matrices
    while True:
        n1 = b1[0] ** 2 + b1[1] ** 2
        m = round((b1[0] * b2[0] + b1[1] * b2[1]) / n1)
        if m != 0:
            b2 = [b2[0] - m * b1[0], b2[1] - m * b1[1]]
            e2 = e2 * _ipow(e1, -m)
        if b2[0] ** 2 + b2[1] ** 2 < n1:
            b1, b2, e1, e2 = b2, b1, e2, e1
            continue
        if m == 0:
            return e1, e2


def _certify_independence(e1: IntMatrix, e2: IntMatrix, bound: int = 5):
    ident = IntMatrix.identity(3)
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0):
                continue
            m = _ipow(e1, p) * _ipow(e2, q)
            if m == ident or m == -ident:
                raise StructureViolation(f"unit relation e1^{p} e2^{q} = +-I")


# --- palindromic search -----------------------------------------------------


def find_palindromic(a: IntMatrix, depth: int = 2000) -> PalindromeCertificate:
    """Search for a palindromic symmetry of CF(a) via module similarity.

    A palindromic G acts on K as x -> gamma*tau(x) for a nontrivial
    automorphism tau with gamma*tau(M) = M, M = Z + Z alpha + Z beta.  No
    nontrivial automorphism means conclusively no palindromic symmetry; with
    automorphisms, candidates gamma are enumerated in the colon module
    (M : tau(M)) up to `depth` and the result is inconclusive beyond that.
    """
    if not is_hyperbolic(a) or a.n != 3:
        raise NotHyperbolic(f"{a!r} is not a hyperbolic 3x3 operator")
    gg = geocf_from_operator(a)
    field = gg.field
    auts = automorphisms(field)
    if len(auts) == 1:
        return PalindromeCertificate(False, "not_palindromic", depth)
    basis = list(gg.v)
    m = module_from_basis(basis)
    for t in auts[1:]:
        tau_basis = [_subst(b, t) for b in basis]
        n_mod = module_from_basis(tau_basis)
        colon = colon_module(m, n_mod)
        target = m.lattice.covolume() / n_mod.lattice.covolume()
        cbasis = _reduced_basis(field, colon.hnf_basis())
        count = 0
        k = 0
        while count < depth:
            k += 1
            for x in _shell_vectors(3, k):
                count += 1
                gamma = sum(
                    (field.from_rational(x[i]) * cbasis[i] for i in range(3)),
                    field.zero(),
                )
                if gamma.is_zero():
                    continue
                if abs(gamma.norm()) != target:
                    continue
                if scale_module(n_mod, gamma) != m.lattice:
                    continue
                g = _twisted_matrix(basis, t, gamma, field)
                report = is_cf_symmetry(g, a, geocf=gg)
                if report.kind != "palindromic":  # pragma: no cover
                    raise StructureViolation("twisted similarity is not palindromic")
                cert = canonicalize(g, a, geocf=gg, report=report)
                return PalindromeCertificate(
                    True,
                    "found",
                    depth,
                    g=g,
                    kind="palindromic",
                    sigma=report.sigma,
                    det=report.det,
                    case=cert.case,
                    z=cert.z,
                    w=cert.w,
                    conjugators=cert.conjugators,
                    canonical_form=cert.canonical_form,
                    X=cert.X,
                    omega_minpoly=cert.omega_minpoly,
                    condition=cert.condition,
                    trace=cert.trace,
                    norm=cert.norm,
                )
            if count >= depth:
                break
    return PalindromeCertificate(False, "inconclusive", depth)


def _reduced_basis(field: NumberField, elems):
    """LLL-short basis of the Z-module spanned by elems, as field elements."""
    den = 1
    for e in elems:
        for c in e.coords:
            den = den * c.denominator // math.gcd(den, c.denominator)
    rows = [[int(c * den) for c in e.coords] for e in elems]
    return [
        field.element([Fraction(x, den) for x in r]) for r in lll_reduce(rows)
    ]


def _twisted_matrix(basis, t, gamma, field: NumberField) -> IntMatrix:
    """Integer matrix G with G (1, alpha, beta)^T = gamma (1, tau alpha, tau beta)^T."""
    from .intmat import rat_solve

    coord_t = RatMatrix(list(zip(*[b.coords for b in basis])))
    rows = []
    for b in basis:
        target = (gamma * _subst(b, t)).coords
        sol = rat_solve(coord_t, list(target))
        if any(c.denominator != 1 for c in sol):  # pragma: no cover
            raise StructureViolation("twisted image is not integral on the module")
        rows.append([int(c) for c in sol])
    return IntMatrix(rows)


# --- canonicalization (shrinking triangles) ---------------------------------


def canonicalize(
    g: IntMatrix, a: IntMatrix, geocf: GeoCF | None = None, report: SymmetryReport | None = None
) -> PalindromeCertificate:
    """Reduce a palindromic symmetry to a canonical matrix F1..F4.

    Sets F = G+ and iterates the shrinking triangle (v, Fv, F^2v) on the
    lattice plane <n, x> = 1 nearest to the invariant plane (n oriented to
    pair positively with the invariant line) until no interior lattice point
    other than the centroid remains.  An integer centroid is case "a"
    (conjugate to F1); otherwise case "b" yields all three conjugators onto
    F2, F3 and F4.  Every identity is verified exactly.
    """
    gg = geocf if geocf is not None else geocf_from_operator(a)
    rep = report if report is not None else is_cf_symmetry(g, a, geocf=gg)
    if rep.kind != "palindromic":
        raise NotASymmetry("operator is not a palindromic symmetry")
    f = rep.order3.g_plus
    line = rep.order3.invariant_line
    # normal of the F-invariant plane, oriented against the invariant line
    ker = integer_kernel((f.transpose() - IntMatrix.identity(3)).rows)
    if len(ker) != 1:
        raise StructureViolation("G+ has no unique invariant plane")
    n = primitive_vector(ker[0])
    if sum(x * y for x, y in zip(n, line)) < 0:
        n = tuple(-x for x in n)
    z1, z2, z3, w = _shrink_triangles(f, n)
    w_int = all(c.denominator == 1 for c in w)
    conjugators = {}
    if w_int:
        case = "a"
        wz = tuple(int(c) for c in w)
        x1 = _conjugator_onto(
            (z1, z2, wz), ((1, 1, 0), (1, 0, -1), (1, 0, 0))
        )
        _assert_conj(x1, f, F_MATRICES[1])
        expect_z3 = x1.apply(z3)
        if expect_z3 != (1, -1, 1):
            raise StructureViolation(f"X1 z3 = {expect_z3}, expected (1, -1, 1)")
        conjugators[1] = _omega_details(x1, a, 1)
    else:
        case = "b"
        targets = {
            2: ((1, 0, 0), (1, 0, 1), (1, 1, 0)),
            3: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
            4: ((1, 0, 0), (0, -1, 0), (0, 0, 1)),
        }
        for idx, cols in targets.items():
            x = _conjugator_onto((z1, z2, z3), cols)
            _assert_conj(x, f, F_MATRICES[idx])
            conjugators[idx] = _omega_details(x, a, idx)
    primary = min(conjugators)
    details = conjugators[primary]
    return PalindromeCertificate(
        True,
        "found",
        0,
        g=g,
        kind="palindromic",
        sigma=rep.sigma,
        det=rep.det,
        case=case,
        z=(z1, z2, z3),
        w=tuple(w),
        conjugators=conjugators,
        canonical_form=primary,
        X=details["X"],
        omega_minpoly=details["omega_minpoly"],
        condition=details["condition"],
        trace=details["trace"],
        norm=details["norm"],
    )


def _conjugator_onto(src_cols, dst_cols) -> IntMatrix:
    """The integer matrix X with X src_i = dst_i for three column vectors."""
    src = RatMatrix(list(zip(*src_cols)))
    dst = [list(col) for col in zip(*dst_cols)]
    from .intmat import rat_inverse

    xr = RatMatrix(dst) * rat_inverse(src)
    if not xr.is_integral():
        raise StructureViolation("conjugator is not integral")
    x = xr.to_integer()
    if abs(det(x)) != 1:
        raise StructureViolation(f"conjugator has determinant {det(x)}")
    return x


def _assert_conj(x: IntMatrix, f: IntMatrix, target: IntMatrix):
    if x * f * _int_inverse(x) != target:
        raise StructureViolation("conjugation identity failed")


def _omega_details(x: IntMatrix, a: IntMatrix, class_id: int):
    """Eigenvector data of X a X^-1 and the exactly verified class condition."""
    a2 = x * a * _int_inverse(x)
    gg2 = geocf_from_operator(a2)
    omega, beta = gg2.alpha, gg2.beta
    field = gg2.field
    ok = False
    for t in automorphisms(field)[1:]:
        sig = _subst(omega, t)
        if class_id in (1, 2):
            ok = beta == sig
        elif class_id == 3:
            ok = beta == sig.inverse()
        else:
            ok = beta == -sig.inverse()
        if ok:
            break
    tr, nm = omega.trace(), omega.norm()
    cond_ok = {1: tr == 0, 2: tr == 1, 3: nm == 1, 4: nm == -1}[class_id]
    if not (ok and cond_ok):
        raise StructureViolation(
            f"class {class_id} relations failed: trace {tr}, norm {nm}"
        )
    return {
        "X": x,
        "condition": CLASS_CONDITIONS[class_id],
        "omega_minpoly": omega.minpoly(),
        "trace": tr,
        "norm": nm,
    }


def _shrink_triangles(f: IntMatrix, n):
    """Terminal orbit triangle of the iteration on the plane <n, x> = 1.

    Works in exact 2D lattice coordinates of the plane; the triangle area
    strictly decreases at every replacement, which is asserted.
    """
    x0 = _particular_solution(n)
    k1, k2 = integer_kernel([list(n)])

    def to_plane(p):
        # p = x0 + c1 k1 + c2 k2; solve the 2x2 system on two coordinates
        d = [p[i] - x0[i] for i in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                dd = k1[i] * k2[j] - k1[j] * k2[i]
                if dd != 0:
                    c1, r1 = divmod(d[i] * k2[j] - d[j] * k2[i], dd)
                    c2, r2 = divmod(k1[i] * d[j] - k1[j] * d[i], dd)
                    if r1 == 0 and r2 == 0:
                        cand = (c1, c2)
                        if all(
                            x0[t] + c1 * k1[t] + c2 * k2[t] == p[t] for t in range(3)
                        ):
                            return cand
        raise StructureViolation("point is not on the lattice plane")  # pragma: no cover

    def from_plane(c):
        return tuple(x0[t] + c[0] * k1[t] + c[1] * k2[t] for t in range(3))

    def f_apply(c):
        return to_plane(f.apply(from_plane(c)))

    v = _initial_plane_point(f, n, x0, k1, k2, to_plane)
    area = None
    while True:
        t1, t2, t3 = v, f_apply(v), f_apply(f_apply(v))
        new_area = abs(
            (t2[0] - t1[0]) * (t3[1] - t1[1]) - (t2[1] - t1[1]) * (t3[0] - t1[0])
        )
        if area is not None and new_area >= area:
            raise StructureViolation("triangle area did not shrink")
        area = new_area
        # The closed triangle is invariant under F, so replacing a vertex by
        # any of its non-vertex, non-fixed lattice points strictly shrinks it.
        interior = [
            p
            for p in _triangle_points(t1, t2, t3)
            if p not in (t1, t2, t3) and f_apply(p) != p
        ]
        if not interior:
            z = [from_plane(t) for t in (t1, t2, t3)]
            w3 = tuple(
                Fraction(z[0][i] + z[1][i] + z[2][i], 3) for i in range(3)
            )
            return z[0], z[1], z[2], w3
        v = min(interior)


def _triangle_points(a, b, c):
    """Lattice points of a closed 2D triangle, exact sign tests."""
    xs = [a[0], b[0], c[0]]
    ys = [a[1], b[1], c[1]]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            p = (x, y)
            s1 = _cross2(a, b, p)
            s2 = _cross2(b, c, p)
            s3 = _cross2(c, a, p)
            if (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0):
                out.append(p)
    return out


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _particular_solution(n):
    """Integer x with <n, x> = 1 for a primitive covector n."""
    n0, n1, n2 = n
    g01, u, v = _xgcd(n0, n1)
    g, s, t = _xgcd(g01, n2)
    if g != 1:
        raise StructureViolation("normal vector is not primitive")  # pragma: no cover
    return (u * s, v * s, t)


def _xgcd(a, b):
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


def _initial_plane_point(f, n, x0, k1, k2, to_plane):
    """Smallest lattice point of the plane off the invariant line, by
    (L-inf, lex) order of ambient coordinates."""
    ident = IntMatrix.identity(3)
    for k in range(0, 64):
        best = None
        for c in _shell_vectors(2, k):
            p = tuple(x0[t] + c[0] * k1[t] + c[1] * k2[t] for t in range(3))
            if f.apply(p) == p:
                continue  # on the invariant line
            key = (max(abs(t) for t in p), p)
            if best is None or key < best[0]:
                best = (key, c)
        if best is not None:
            return best[1]
    raise StructureViolation("no lattice point off the invariant line")  # pragma: no cover


# --- class examples and the theorem pipeline --------------------------------


def make_class_example(
    class_id: int, f: IntPolynomial, unit_hint: FieldElement | None = None, depth: int = 4000
) -> IntMatrix:
    """A hyperbolic operator in class 1..4 built from a Galois totally real
    cubic: basis (1, alpha, beta) with beta the class-shaped conjugate and a
    nontorsion unit of the module acting on it.

    The corresponding canonical matrix F_{class_id} is asserted to be a
    palindromic symmetry of the result.
    """
    if class_id not in (1, 2, 3, 4):
        raise ValueError("class_id must be 1..4")
    field = NumberField(f)
    auts = automorphisms(field)
    if len(auts) != 3:
        raise NotGalois(f"{f!r} is not a Galois cubic")
    alpha = field.theta()
    tr, nm = alpha.trace(), alpha.norm()
    if class_id == 1 and tr != 0:
        raise ConditionViolated(f"trace {tr} != 0")
    if class_id == 2 and tr != 1:
        raise ConditionViolated(f"trace {tr} != 1")
    if class_id == 3 and nm != 1:
        raise ConditionViolated(f"norm {nm} != 1")
    if class_id == 4 and nm != -1:
        raise ConditionViolated(f"norm {nm} != -1")
    # Either nontrivial automorphism can serve as sigma_2; skip a labeling
    # whose beta degenerates into the span of 1 and alpha.
    m = basis = None
    for sig in auts[1:]:
        beta = {
            1: sig,
            2: sig,
            3: sig.inverse(),
            4: -sig.inverse(),
        }[class_id]
        cand = [field.one(), alpha, beta]
        try:
            m = module_from_basis(cand)
        except RankDeficient:
            continue
        basis = cand
        break
    if m is None:
        raise ConditionViolated("no automorphism labeling yields a rank-3 module")
    eps = unit_hint if unit_hint is not None else _find_unit(m, depth)
    b = geocf_from_unit(basis, eps)
    report = is_cf_symmetry(F_MATRICES[class_id], b)
    if report.kind != "palindromic":
        raise StructureViolation(
            f"F{class_id} is not a palindromic symmetry of the construction"
        )
    return b


def _find_unit(m, depth):
    """Nontorsion unit of the module minimizing the dominant |embedding|."""
    field = m.field
    order = multiplier_ring(m)
    obasis = _reduced_basis(field, order.hnf_basis())
    found = []
    count = 0
    k = 0
    while count < depth:
        k += 1
        for x in _shell_vectors(3, k):
            count += 1
            e = sum(
                (field.from_rational(x[i]) * obasis[i] for i in range(3)), field.zero()
            )
            if e.is_zero() or e.is_rational():
                continue
            if abs(e.norm()) != 1:
                continue
            found.append(e)
            if count >= depth:
                break
        if found and k >= 3:
            break
        if k > 40:
            break
    if not found:
        raise NoUnitFound(f"no nontorsion unit within {depth} candidates")

    def dominant(e):
        width = Fraction(1, 2**24)
        return max(
            float(field.embed(e, i, width).abs().hi) for i in (1, 2, 3)
        )

    return min(found, key=lambda e: (dominant(e), e.coords))


def theorem_check(a: IntMatrix, depth: int = 2000) -> PalindromeCertificate:
    """Full pipeline: palindromic search plus canonicalization.

    found=False with status "not_palindromic" is conclusive (no nontrivial
    field automorphism); "inconclusive" reports the exhausted sweep bound.
    """
    return find_palindromic(a, depth)
