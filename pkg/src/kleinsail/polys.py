"""Exact univariate polynomials over Z and Q, Sturm sequences and real root isolation.

Coefficients are stored constant-term first.  All arithmetic is exact
(Python ints and fractions.Fraction); intervals have rational endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSquarefree


def _strip(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, constant term first."""

    coeffs: tuple

    def __init__(self, coeffs):
        c = _strip(int(x) for x in coeffs)
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self):
        return self.leading == 1

    def content(self):
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def neg_shift(self):
        """p(-x)."""
        return IntPolynomial([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])


def poly_eval(coeffs, x):
    """Horner evaluation; works for any ring element supporting + and *."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _strip(out)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a, b):
    return poly_add(a, [-x for x in b])


def poly_divmod(a, b):
    """Division with remainder over Q.  Inputs/outputs are Fraction lists."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    lb = b[-1]
    while len(r) >= len(b) and any(r):
        if r[-1] == 0:
            r.pop()
            continue
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for i, bi in enumerate(b):
            r[i + k] -= c * bi
        r.pop()
    return _strip(q), _strip(r)


def poly_gcd(a, b):
    """Monic gcd over Q."""
    a = _strip([Fraction(x) for x in a])
    b = _strip([Fraction(x) for x in b])
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lc = a[-1]
        a = [c / lc for c in a]
    return a


def is_squarefree(p: IntPolynomial):
    if p.degree < 1:
        return not p.is_zero()
    g = poly_gcd(p.coeffs, p.derivative().coeffs)
    return len(g) == 1


def discriminant(p: IntPolynomial):
    """Discriminant for degree 2 or 3."""
    c = p.coeffs
    if p.degree == 2:
        c0, c1, c2 = c
        return c1 * c1 - 4 * c2 * c0
    if p.degree == 3:
        d, cc, b, a = c
        return 18 * a * b * cc * d - 4 * b**3 * d + b**2 * cc**2 - 4 * a * cc**3 - 27 * a**2 * d**2
    raise ValueError("discriminant implemented for degrees 2 and 3 only")


def _is_square(n):
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _divisors(n):
    n = abs(n)
    out = set()
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return out


def has_rational_root(p: IntPolynomial):
    c = p.primitive().coeffs
    if not c:
        return True
    if c[0] == 0:
        return True
    for num in _divisors(c[0]):
        for den in _divisors(c[-1]):
            for s in (1, -1):
                if poly_eval(c, Fraction(s * num, den)) == 0:
                    return True
    return False


def is_irreducible(p: IntPolynomial):
    """Irreducibility over Q for degree <= 3 (rational root test suffices)."""
    d = p.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    if d in (2, 3):
        return not has_rational_root(p)
    raise ValueError("irreducibility test implemented for degree <= 3 only")


# --- Sturm sequences and root isolation ------------------------------------


def sturm_chain(coeffs):
    """Sturm chain of a squarefree polynomial, Fraction coefficients."""
    f = _strip([Fraction(x) for x in coeffs])
    fp = _strip([i * c for i, c in enumerate(f)][1:])
    chain = [f, fp]
    while chain[-1]:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return [c for c in chain if c]


def _sign_changes(chain, x):
    signs = []
    for c in chain:
        v = poly_eval(c, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: IntPolynomial):
    """Cauchy bound: all real roots lie in (-B, B)."""
    c = p.coeffs
    lead = abs(c[-1])
    b = 1 + max(abs(x) for x in c) // lead + 1
    return Fraction(b)


def isolate_real_roots(p: IntPolynomial):
    """Disjoint isolating intervals (lo, hi), one per real root, sorted ascending.

    Each interval is open with f(lo) != 0, f(hi) != 0 and exactly one root
    inside (certified by the Sturm count).
    """
    if p.degree < 1:
        return []
    if not is_squarefree(p):
        raise NotSquarefree(f"{p!r} is not squarefree")
    chain = sturm_chain(p.coeffs)
    B = root_bound(p)

    def count(lo, hi):
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    def shrink_endpoint(lo, hi):
        # move an endpoint off a root of f
        while p(lo) == 0:
            lo -= Fraction(1, 10**6)
        while p(hi) == 0:
            hi += Fraction(1, 10**6)
        return lo, hi

    out = []
    stack = [shrink_endpoint(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if p(mid) == 0:
            mid = lo + (hi - lo) * Fraction(13, 31)
            while p(mid) == 0:  # pragma: no cover - needs two coincident rationals
                mid = lo + (hi - lo) * Fraction(1, 97)
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p: IntPolynomial, interval, width):
    """Bisect an isolating interval of p down to the requested width."""
    lo, hi = interval
    slo = 1 if p(lo) > 0 else -1
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            # rational root; tighten symmetrically around it
            eps = min(width, hi - lo) / 4
            return (mid - eps, mid + eps)
        if (1 if v > 0 else -1) == slo:
            lo = mid
        else:
            hi = mid
    return (lo, hi)
