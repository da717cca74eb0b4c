"""Acceptance suites: executable checks of the library's main claims.

Each criterion is a function returning a CriterionResult with a pass flag,
elapsed time and a one-line detail; `run` executes a selection and is shared
by the command-line `verify` subcommand and the acceptance tests.  All checks
are exact; floats only prefilter, never decide.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .intmat import IntMatrix, det, inverse_rat
from .polys import IntPolynomial
from .quadratic import (
    QuadElt,
    QuadraticSurd,
    _convex_hull,
    _cone_signs,
    _near_chain,
    cf_expand,
    find_symmetries_2d,
    is_cyclic_palindrome,
    klein_polygon,
    operator_from_period,
    prop1_witness_search,
    surd_from_quad,
)
from .sail import antipode, cone_action, geocf_from_operator, locate_cone
from .symmetry import (
    F_MATRICES,
    dirichlet_group,
    is_cf_symmetry,
    make_class_example,
    theorem_check,
)

CLASS_FIELDS = {
    1: IntPolynomial([1, -3, 0, 1]),
    2: IntPolynomial([1, -2, -1, 1]),
    3: IntPolynomial([-1, -3, 0, 1]),
    4: IntPolynomial([1, -2, -1, 1]),
}

NON_GALOIS_CUBICS = (
    IntPolynomial([1, -4, 0, 1]),
    IntPolynomial([1, -3, -1, 1]),
    IntPolynomial([1, -4, -1, 1]),
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    budget: float | None
    detail: str

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f" / budget {self.budget:g}s" if self.budget else ""
        return (
            f"criterion {self.number} ({self.name}): {verdict}"
            f" ({self.elapsed:.2f}s{budget}) - {self.detail}"
        )


def _companion(f: IntPolynomial) -> IntMatrix:
    c0, c1, c2, _ = f.coeffs
    return IntMatrix([[0, 1, 0], [0, 0, 1], [-c0, -c1, -c2]])


def _rotations(word):
    w = tuple(word)
    return {w[i:] + w[:i] for i in range(len(w))}


# --- criterion 1: reversal of reduced-surd periods under conjugation --------


def _reduced_surds(d_bound, count):
    """First `count` reduced surds (alpha > 1, -1 < conj < 0) by (D, P, Q)."""
    out = []
    for d in range(2, d_bound + 1):
        if math.isqrt(d) ** 2 == d:
            continue
        for p in range(1, math.isqrt(d) + 1):
            for q in range(1, 2 * math.isqrt(d) + 3):
                if (d - p * p) % q != 0:
                    continue
                alpha = QuadElt(d, Fraction(p, q), Fraction(1, q))
                conj = alpha.conjugate()
                if alpha > 1 and QuadElt(d, -1) < conj < QuadElt(d, 0):
                    out.append(QuadraticSurd(p, q, d))
                    if len(out) == count:
                        return out
    return out


def criterion_1() -> CriterionResult:
    t0 = time.time()
    surds = _reduced_surds(150, 50)
    checked = 0
    for s in surds:
        cf = cf_expand(s)
        if cf.preperiod != ():
            return _fail(1, t0, f"{s!r} is not purely periodic")
        rev = surd_from_quad(-1 / s.value().conjugate())
        cf_rev = cf_expand(rev)
        if cf_rev.preperiod != ():
            return _fail(1, t0, f"-1/conj of {s!r} is not purely periodic")
        if tuple(reversed(cf.period)) not in _rotations(cf_rev.period):
            return _fail(1, t0, f"period of -1/conj of {s!r} is not the reversal")
        checked += 1
    return _pass(1, t0, f"{checked} reduced surds, reversal exact")


# --- criterion 2: witness search consistency and the trace-one/norm-one link


def criterion_2() -> CriterionResult:
    t0 = time.time()
    with_witness = linked = 0
    for d in range(2, 201):
        if math.isqrt(d) ** 2 == d:
            continue
        s = QuadraticSurd(0, 1, d)
        rep = prop1_witness_search(s, 30)
        if rep.witnesses:
            with_witness += 1
            if not is_cyclic_palindrome(cf_expand(s).period).is_palindrome:
                return _fail(2, t0, f"sqrt({d}): witness but non-palindromic period")
        # trace-one and norm-one witnesses map to each other under the
        # unimodular substitutions w -> w/(1-w) and m -> m/(1+m); verify the
        # image condition exactly whenever either side was found.
        tr1 = rep.witnesses.get("trace_one")
        nm1 = rep.witnesses.get("norm_one")
        if tr1 is not None:
            mu = tr1.omega.value() / (1 - tr1.omega.value())
            if mu.is_rational() or mu.norm() != 1:
                return _fail(2, t0, f"sqrt({d}): trace-one image has norm {mu.norm()}")
            linked += 1
        if nm1 is not None:
            om = nm1.omega.value() / (1 + nm1.omega.value())
            if om.is_rational() or om.trace() != 1:
                return _fail(2, t0, f"sqrt({d}): norm-one image has trace {om.trace()}")
            linked += 1
        if tr1 is None and nm1 is None and rep.witnesses:
            # neither condition observed at this height: nothing to link
            continue
    return _pass(2, t0, f"{with_witness} surds with witnesses, {linked} links verified")


# --- criterion 3: sail vertices against a brute-force hull oracle -----------


def _oracle_sail(alpha, beta, cone, box, certify):
    pts = []
    fa, fb = float(alpha), float(beta)
    eps = 1e-7
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            if (x, y) == (0, 0):
                continue
            ra = y - fa * x
            rb = y - fb * x
            scale = 1 + abs(x) + abs(y)
            if abs(ra) > eps * scale and abs(rb) > eps * scale:
                sgn = (1 if ra > 0 else -1, 1 if rb > 0 else -1)
            else:
                sgn = _cone_signs((x, y), alpha, beta)
            if sgn == cone:
                pts.append((x, y))
    chain = _near_chain(_convex_hull(pts))
    # Chain endpoints are box artifacts: the truncation only certifies the
    # sail strictly inside the innermost endpoint.
    for e in (chain[0], chain[-1]):
        certify = min(certify, max(abs(e[0]), abs(e[1])) - 1)
    inner = {p for p in chain[1:-1] if max(abs(p[0]), abs(p[1])) <= certify}
    return inner, certify


def criterion_3() -> CriterionResult:
    t0 = time.time()
    cones = 0
    cases = [(d, p) for d in (2, 3, 5, 6, 7, 8, 10, 13, 15, 17) for p in (0, 1)]
    for d, p in cases:
        s = QuadraticSurd(p, 1, d)
        s2 = QuadraticSurd(p, -1, d)
        alpha, beta = s.value(), s2.value()
        cone = _cone_signs((1, 0), alpha, beta)
        oracle, certify = _oracle_sail(alpha, beta, cone, 60, 30)
        if certify < 4:
            return _fail(3, t0, f"D={d}, P={p}: certified region degenerate")
        count = 4
        while True:
            verts = klein_polygon(s, s2, cone, count)
            ends = (verts[0], verts[-1])
            if all(max(abs(e[0]), abs(e[1])) > certify for e in ends) or count >= 12:
                break
            count += 2
        got = {v for v in verts if max(abs(v[0]), abs(v[1])) <= certify}
        if got != oracle:
            return _fail(
                3, t0, f"D={d}, P={p}: sail {sorted(got)} != oracle {sorted(oracle)}"
            )
        cones += 1
    return _pass(3, t0, f"{cones} cones match the 60x60 hull oracle exactly")


# --- criterion 4: Dirichlet groups ------------------------------------------


def criterion_4() -> CriterionResult:
    t0 = time.time()
    fields = [
        IntPolynomial([1, -3, 0, 1]),
        IntPolynomial([1, -2, -1, 1]),
        *NON_GALOIS_CUBICS,
    ]
    for f in fields:
        a = _companion(f)
        dg = dirichlet_group(a, 10**4)
        e1, e2 = dg.generators
        if e1 * a != a * e1 or e2 * a != a * e2 or e1 * e2 != e2 * e1:
            return _fail(4, t0, f"{f!r}: generators do not commute")
        if dg.torsion != -IntMatrix.identity(3):
            return _fail(4, t0, f"{f!r}: torsion is not -I")
    return _pass(4, t0, f"{len(fields)} operators: independent unit pairs found")


# --- criterion 5: class constructions carry their canonical symmetry --------


def criterion_5() -> CriterionResult:
    t0 = time.time()
    from .numfield import automorphisms

    for cid, f in CLASS_FIELDS.items():
        b = make_class_example(cid, f)
        rep = is_cf_symmetry(F_MATRICES[cid], b)
        if rep.kind != "palindromic":
            return _fail(5, t0, f"class {cid}: F is not palindromic for the example")
        gg = geocf_from_operator(b)
        alpha, beta = gg.alpha, gg.beta
        ok = False
        for t in automorphisms(gg.field)[1:]:
            sig = alpha.apply_poly_image(t)
            ok = {
                1: beta == sig and alpha.trace() == 0,
                2: beta == sig and alpha.trace() == 1,
                3: beta == sig.inverse() and alpha.norm() == 1,
                4: beta == -sig.inverse() and alpha.norm() == -1,
            }[cid]
            if ok:
                break
        if not ok:
            return _fail(5, t0, f"class {cid}: eigenvector relations not recovered")
    return _pass(5, t0, "classes 1-4: symmetry and eigenvector relations exact")


# --- criterion 6: order-3 structure of every palindromic symmetry -----------


def _collect_palindromic(seed=7):
    """(g, a) pairs from the class examples and their random conjugates."""
    rng = random.Random(seed)
    pairs = []
    for cid, f in CLASS_FIELDS.items():
        b = make_class_example(cid, f)
        pairs.append((F_MATRICES[cid], b))
        u = _random_unimodular(rng)
        a2 = u * b * inverse_rat(u).to_integer()
        cert = theorem_check(a2)
        if cert.found:
            pairs.append((cert.g, a2))
    return pairs


def criterion_6() -> CriterionResult:
    t0 = time.time()
    checked = 0
    for g, a in _collect_palindromic():
        rep = is_cf_symmetry(g, a)
        o3 = rep.order3
        cube = g * g * g
        if cube != IntMatrix.identity(3) * o3.g_cubed_sign:
            return _fail(6, t0, "cube sign mismatch")
        if rep.sigma == (1, 2, 3) or _apply3(rep.sigma) != (1, 2, 3):
            return _fail(6, t0, f"sigma {rep.sigma} is not a 3-cycle")
        pairing = sum(
            x * y for x, y in zip(o3.invariant_line, o3.invariant_plane_normal)
        )
        if pairing == 0:
            return _fail(6, t0, "invariant line lies in the invariant plane")
        checked += 1
    return _pass(6, t0, f"{checked} palindromic symmetries: g^3 = +-I, 3-cycle, pairing != 0")


def _apply3(sigma):
    out = list(range(1, 4))
    for _ in range(3):
        out = [sigma[i - 1] for i in out]
    return tuple(out)


# --- criterion 7: canonicalization round-trip -------------------------------


def _random_unimodular(rng):
    while True:
        m = IntMatrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        if abs(det(m)) == 1:
            return m


def criterion_7(seed=7) -> CriterionResult:
    t0 = time.time()
    rng = random.Random(seed)
    runs = 0
    for cid, f in CLASS_FIELDS.items():
        b = make_class_example(cid, f)
        for _ in range(10):
            u = _random_unimodular(rng)
            a2 = u * b * inverse_rat(u).to_integer()
            cert = theorem_check(a2)
            if cert.status != "found":
                return _fail(7, t0, f"class {cid}: no symmetry found for a conjugate")
            g_plus = cert.g * cert.det
            for idx, detail in cert.conjugators.items():
                x = detail["X"]
                if x * g_plus * inverse_rat(x).to_integer() != F_MATRICES[idx]:
                    return _fail(7, t0, f"class {cid}: X G+ X^-1 != F{idx}")
            if cert.case == "b" and sorted(cert.conjugators) != [2, 3, 4]:
                return _fail(7, t0, f"class {cid}: case b missing conjugators")
            if cert.case == "a" and sorted(cert.conjugators) != [1]:
                return _fail(7, t0, f"class {cid}: case a conjugator set wrong")
            runs += 1
    return _pass(7, t0, f"{runs} conjugated operators canonicalized exactly")


# --- criterion 8: non-Galois negatives are conclusive -----------------------


def criterion_8() -> CriterionResult:
    t0 = time.time()
    for f in NON_GALOIS_CUBICS:
        cert = theorem_check(_companion(f))
        if cert.found or cert.status != "not_palindromic":
            return _fail(8, t0, f"{f!r}: expected a conclusive negative")
    return _pass(8, t0, "3 non-Galois operators conclusively not palindromic")


# --- criterion 9: determinant dichotomy and cone orbits ---------------------


def criterion_9() -> CriterionResult:
    t0 = time.time()
    # 1D: the golden-ratio operator admits a det +1 palindromic symmetry
    # moving all four cones (the quarter-turn), and the (1,2,2,1)-period
    # operator admits only det +1 palindromic symmetries at entry bound 20.
    golden = IntMatrix([[1, 1], [1, 0]])
    rot = IntMatrix([[0, -1], [1, 0]])
    syms = find_symmetries_2d(golden, 3)
    hit = [s for s in syms if s.g == rot]
    if not hit or hit[0].kind != "palindromic" or hit[0].det != 1 or hit[0].fixed_cones:
        return _fail(9, t0, "quarter-turn is not a cone-moving palindromic symmetry")
    a1221 = operator_from_period((1, 2, 2, 1))
    pal = [s for s in find_symmetries_2d(a1221, 20) if s.kind == "palindromic"]
    if not pal or any(s.det != 1 for s in pal):
        return _fail(9, t0, "(1,2,2,1): palindromic symmetry with det -1 found")
    # 3D: G+ fixes the cone of the invariant line, G- sends it to the
    # antipode, and the remaining six cones form a single G- orbit.
    certs = 0
    for g, a in _collect_palindromic():
        gg = geocf_from_operator(a)
        rep = is_cf_symmetry(g, a, geocf=gg)
        o3 = rep.order3
        act_plus = cone_action(o3.g_plus, gg)
        act_minus = cone_action(o3.g_minus, gg)
        c = o3.fixed_cone
        if act_plus[c] != c:
            return _fail(9, t0, "G+ does not fix the invariant-line cone")
        if act_minus[c] != antipode(c) or act_minus[antipode(c)] != c:
            return _fail(9, t0, "G- does not swap the fixed cone with its antipode")
        rest = [x for x in act_minus if x not in (c, antipode(c))]
        cur = rest[0]
        orbit = set()
        for _ in range(6):
            orbit.add(cur)
            cur = act_minus[cur]
        if len(orbit) != 6 or cur != rest[0]:
            return _fail(9, t0, "remaining six cones are not a single 6-orbit")
        certs += 1
    return _pass(
        9, t0, f"2D dichotomy and {certs} cone-orbit structures verified"
    )


# --- driver -----------------------------------------------------------------

_BUDGETS = {1: 5, 2: 60, 3: 30, 4: 120, 5: 30, 6: None, 7: 300, 8: 30, 9: None}
_NAMES = {
    1: "galois-reversal",
    2: "prop1-corpus",
    3: "klein-oracle",
    4: "dirichlet",
    5: "class-examples",
    6: "order3-structure",
    7: "theorem1-roundtrip",
    8: "non-galois-control",
    9: "cone-dichotomy",
}
_FUNCS = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def _pass(number, t0, detail):
    return CriterionResult(
        number, _NAMES[number], True, time.time() - t0, _BUDGETS[number], detail
    )


def _fail(number, t0, detail):
    return CriterionResult(
        number, _NAMES[number], False, time.time() - t0, _BUDGETS[number], detail
    )


def run(numbers=None):
    """Run the selected criteria (all by default); list of CriterionResult."""
    selected = sorted(numbers) if numbers else sorted(_FUNCS)
    return [_FUNCS[n]() for n in selected]


def suite_number(name: str) -> int:
    for n, nm in _NAMES.items():
        if nm == name:
            return n
    raise KeyError(name)
