"""Real algebraic numbers and exact arithmetic in a fixed totally real field.

Elements of Q[x]/(f) are held in power-basis coordinates with rational
coefficients; embeddings into R carry certified rational intervals.  Full
rank-n Z-modules inside the field get a canonical HNF representation so that
module equality, unit tests, multiplier rings and colon modules are all
decidable by exact lattice arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .errors import DivisionByZero, RankDeficient
from .interval import RatInterval, interval_det3, interval_poly_eval
from .intmat import IntMatrix, RatMatrix, det, hnf_rows, rat_inverse
from .polys import IntPolynomial

#: default certification width for embeddings (2^-64)
DEFAULT_WIDTH = Fraction(1, 2**64)


@dataclass(frozen=True)
class AlgebraicReal:
    """A real algebraic number: primitive irreducible minpoly + isolating interval."""

    minpoly: IntPolynomial
    interval: tuple  # (lo, hi) Fractions, contains exactly one root

    def refine(self, width):
        return AlgebraicReal(self.minpoly, polys.refine_root(self.minpoly, self.interval, width))


def isolate_real_roots(f: IntPolynomial):
    """Re-export of the Sturm-based isolator (squarefree input required)."""
    return polys.isolate_real_roots(f)


class NumberField:
    """Q[x]/(f) for a monic irreducible totally real f of degree n.

    Embedding order: sigma_1 is the designated root (``theta_index`` into the
    ascending list of real roots), the remaining embeddings sorted ascending.
    """

    def __init__(self, f: IntPolynomial, theta_index: int = 0):
        f = IntPolynomial(f.coeffs)
        if not f.is_monic():
            raise ValueError("defining polynomial must be monic")
        if not polys.is_irreducible(f):
            raise ValueError("defining polynomial must be irreducible")
        self.f = f
        self.n = f.degree
        roots = polys.isolate_real_roots(f)
        if len(roots) != self.n:
            raise ValueError("field is not totally real")
        if not 0 <= theta_index < self.n:
            raise ValueError("theta_index out of range")
        self._roots = list(roots)  # ascending; refined in place as needed
        self.theta_index = theta_index
        # embedding order: designated first, others ascending
        self._embed_order = [theta_index] + [i for i in range(self.n) if i != theta_index]
        # reduction table: theta^k for k = n .. 2n-2 in the power basis
        red = []
        cur = [Fraction(-c) for c in f.coeffs[:-1]]
        red.append(tuple(cur))
        for _ in range(self.n - 2):
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            nxt = [x + top * r for x, r in zip(nxt, [Fraction(-c) for c in f.coeffs[:-1]])]
            red.append(tuple(nxt))
            cur = nxt
        self._reduction = red

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.f == other.f
            and self.theta_index == other.theta_index
        )

    def __hash__(self):
        return hash((self.f, self.theta_index))

    def __repr__(self):
        return f"NumberField({list(self.f.coeffs)}, theta_index={self.theta_index})"

    # --- elements ----------------------------------------------------------

    def element(self, coords) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > self.n:
            raise ValueError("too many coordinates")
        c += [Fraction(0)] * (self.n - len(c))
        return FieldElement(self, tuple(c))

    def zero(self):
        return self.element([0])

    def one(self):
        return self.element([1])

    def theta(self):
        return self.element([0, 1])

    def from_rational(self, q):
        return self.element([Fraction(q)])

    def reduce_poly(self, coeffs):
        """Reduce polynomial coords of degree < 2n-1 modulo f."""
        c = [Fraction(x) for x in coeffs]
        out = c[: self.n] + [Fraction(0)] * max(0, self.n - len(c))
        for k in range(self.n, len(c)):
            if c[k] == 0:
                continue
            for j, r in enumerate(self._reduction[k - self.n]):
                out[j] += c[k] * r
        return tuple(out[: self.n])

    # --- embeddings --------------------------------------------------------

    def root_interval(self, sorted_index, width=None) -> RatInterval:
        """Isolating interval of the root at ascending position ``sorted_index``."""
        iv = self._roots[sorted_index]
        if width is not None and iv[1] - iv[0] > width:
            iv = polys.refine_root(self.f, iv, width)
            self._roots[sorted_index] = iv
        return RatInterval(*iv)

    def embedding_interval(self, i, width=None) -> RatInterval:
        """Root interval for embedding index i in {1..n} (1 = designated)."""
        return self.root_interval(self._embed_order[i - 1], width)

    def embed(self, elem: "FieldElement", i: int, width=DEFAULT_WIDTH) -> RatInterval:
        """Interval of width <= width certified to contain sigma_i(elem)."""
        if not 1 <= i <= self.n:
            raise ValueError("embedding index out of range")
        w = Fraction(width)
        root_w = min(w, Fraction(1, 2**8))
        while True:
            iv = interval_poly_eval(elem.coords, self.embedding_interval(i, root_w))
            if iv.width <= w:
                return iv
            root_w /= 2**8

    def embedding_permutation(self, elem: "FieldElement"):
        """For an automorphism image ``elem`` = g(theta): the permutation p with
        sigma_i(elem) = root at embedding index p[i].  1-based dict {1..n}->{1..n}."""
        perm = {}
        for i in range(1, self.n + 1):
            w = Fraction(1, 2**16)
            while True:
                iv = self.embed(elem, i, w)
                hits = [
                    j
                    for j in range(1, self.n + 1)
                    if not (
                        iv.hi < self.embedding_interval(j, w).lo
                        or iv.lo > self.embedding_interval(j, w).hi
                    )
                ]
                if len(hits) == 1:
                    perm[i] = hits[0]
                    break
                w /= 2**16
        return perm


class FieldElement:
    """Element of a fixed number field in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        self.field = field
        self.coords = tuple(Fraction(x) for x in coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coords))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = polys.poly_mul(list(self.coords), list(o.coords))
        return FieldElement(self.field, self.field.reduce_poly(prod))

    __rmul__ = __mul__

    def inverse(self):
        """Exact inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise DivisionByZero("cannot invert zero")
        # extended gcd of self.coords and f
        a = polys._strip(list(self.coords))
        b = [Fraction(c) for c in self.field.f.coeffs]
        # invariants: r0 = s0 * self mod f (up to multiples of f)
        r0, r1 = a, b
        s0, s1 = [Fraction(1)], []
        while r1:
            q, r = polys.poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, polys.poly_sub(s0, polys.poly_mul(q, s1))
        # r0 is a nonzero constant (f irreducible)
        c = r0[0]
        inv = [x / c for x in s0]
        return FieldElement(self.field, self.field.reduce_poly(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mult_matrix(self) -> RatMatrix:
        """Matrix of multiplication by self on the power basis (columns = images)."""
        n = self.field.n
        cols = []
        for j in range(n):
            img = self * self.field.element([0] * j + [1])
            cols.append(img.coords)
        return RatMatrix(list(zip(*cols)))

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum(m.rows[i][i] for i in range(self.field.n))

    def norm(self) -> Fraction:
        return Fraction(det(self.mult_matrix()))

    def minpoly(self) -> IntPolynomial:
        """Primitive integer minimal polynomial (degree 1 or n for prime-degree fields)."""
        if self.is_rational():
            q = self.coords[0]
            return IntPolynomial([-q.numerator, q.denominator]).primitive()
        chi = _charpoly_rat(self.mult_matrix())
        den = math.lcm(*[c.denominator for c in chi])
        return IntPolynomial([int(c * den) for c in chi]).primitive()

    def apply_poly_image(self, image: "FieldElement") -> "FieldElement":
        """Image of self under the map theta -> image (ring substitution)."""
        return polys.poly_eval(self.coords, image) + self.field.zero()

    def as_algebraic(self, i=1) -> AlgebraicReal:
        """AlgebraicReal view of sigma_i(self)."""
        mp = self.minpoly()
        w = Fraction(1, 2**16)
        chain = polys.sturm_chain(mp.coeffs)
        while True:
            iv = self.field.embed(self, i, w)
            lo, hi = iv.lo, iv.hi
            if mp(lo) != 0 and mp(hi) != 0:
                from .polys import _sign_changes

                if _sign_changes(chain, lo) - _sign_changes(chain, hi) == 1:
                    return AlgebraicReal(mp, (lo, hi))
            w /= 2**8

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"


def _charpoly_rat(m: RatMatrix):
    """Characteristic polynomial coefficients (constant first, monic) of a rational matrix."""
    n = m.n
    entries = [
        [[-m.rows[i][j], Fraction(1)] if i == j else [-m.rows[i][j]] for j in range(n)]
        for i in range(n)
    ]

    def pdet(rows_idx, cols_idx):
        if len(rows_idx) == 1:
            return entries[rows_idx[0]][cols_idx[0]]
        i = rows_idx[0]
        acc = []
        for k, j in enumerate(cols_idx):
            minor = pdet(rows_idx[1:], cols_idx[:k] + cols_idx[k + 1 :])
            term = polys.poly_mul(entries[i][j], minor)
            acc = polys.poly_add(acc, term) if k % 2 == 0 else polys.poly_sub(acc, term)
        return acc

    return [Fraction(c) for c in pdet(tuple(range(n)), tuple(range(n)))]


# --- lattices and full modules ---------------------------------------------


class QLattice:
    """Full-rank lattice in Q^n, canonically (1/den) * row-lattice(hnf)."""

    __slots__ = ("den", "hnf")

    def __init__(self, den, hnf_matrix: IntMatrix):
        g = math.gcd(int(den), *[abs(x) for row in hnf_matrix.rows for x in row])
        self.den = int(den) // g
        self.hnf = IntMatrix([[x // g for x in row] for row in hnf_matrix.rows])

    @classmethod
    def from_rows(cls, rows):
        """Lattice generated by rational row vectors (must have full rank)."""
        rows = [[Fraction(x) for x in r] for r in rows]
        if not rows:
            raise RankDeficient("no generators")
        n = len(rows[0])
        den = math.lcm(*[x.denominator for r in rows for x in r]) if rows else 1
        int_rows = [[int(x * den) for x in r] for r in rows]
        h = hnf_rows(int_rows)
        if len(h) != n:
            raise RankDeficient(f"rank {len(h)} < {n}")
        return cls(den, IntMatrix(h))

    def __eq__(self, other):
        return isinstance(other, QLattice) and self.den == other.den and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.den, self.hnf))

    @property
    def n(self):
        return self.hnf.n

    def basis_rows(self):
        d = Fraction(1, self.den)
        return [tuple(d * x for x in row) for row in self.hnf.rows]

    def member(self, vec):
        """Exact membership of a rational vector."""
        target = [Fraction(x) * self.den for x in vec]
        h = self.hnf.rows
        n = self.n
        coef = [Fraction(0)] * n
        for j in range(n):
            rem = target[j] - sum(coef[i] * h[i][j] for i in range(j))
            c = rem / h[j][j]
            if c.denominator != 1:
                return False
            coef[j] = c
        return True

    def transform(self, s: RatMatrix) -> "QLattice":
        """Image under the row-vector map x -> x s."""
        rows = []
        for b in self.basis_rows():
            rows.append(tuple(sum(b[k] * s.rows[k][j] for k in range(self.n)) for j in range(self.n)))
        return QLattice.from_rows(rows)

    def sum(self, other: "QLattice") -> "QLattice":
        return QLattice.from_rows(list(self.basis_rows()) + list(other.basis_rows()))

    def dual(self) -> "QLattice":
        b = RatMatrix(self.basis_rows())
        inv = rat_inverse(b)
        # rows of (B^-1)^T
        return QLattice.from_rows(list(zip(*inv.rows)))

    def intersect(self, other: "QLattice") -> "QLattice":
        return self.dual().sum(other.dual()).dual()

    def covolume(self) -> Fraction:
        return abs(Fraction(det(self.hnf))) / Fraction(self.den) ** self.n

    def __repr__(self):
        return f"QLattice(1/{self.den} * {self.hnf!r})"


class FullModule:
    """Rank-n Z-module inside a degree-n field, with canonical HNF lattice."""

    __slots__ = ("field", "basis", "lattice")

    def __init__(self, field: NumberField, basis, lattice: QLattice):
        self.field = field
        self.basis = tuple(basis)
        self.lattice = lattice

    def __eq__(self, other):
        return (
            isinstance(other, FullModule)
            and self.field == other.field
            and self.lattice == other.lattice
        )

    def __hash__(self):
        return hash((self.field, self.lattice))

    def contains(self, e: FieldElement):
        return self.lattice.member(e.coords)

    def hnf_basis(self):
        """Basis elements read off the canonical HNF rows."""
        return [self.field.element(row) for row in self.lattice.basis_rows()]

    def __repr__(self):
        return f"FullModule({self.lattice!r})"


def module_from_basis(elems) -> FullModule:
    """Full module generated by n field elements (must be Q-independent)."""
    elems = list(elems)
    field = elems[0].field
    if len(elems) != field.n:
        raise RankDeficient(f"need {field.n} basis elements")
    lat = QLattice.from_rows([e.coords for e in elems])
    return FullModule(field, elems, lat)


def scale_module(m: FullModule, e: FieldElement) -> QLattice:
    """Lattice of e*m (e nonzero)."""
    return m.lattice.transform(_right_mult_matrix(e))


def _right_mult_matrix(e: FieldElement) -> RatMatrix:
    """Matrix S with coords(x*e) = coords(x) . S for row vectors."""
    t = e.mult_matrix()  # column convention
    return RatMatrix(list(zip(*t.rows)))


def is_unit_of_module(e: FieldElement, m: FullModule) -> bool:
    """True iff e*m = m as modules (HNF lattice equality)."""
    if e.is_zero():
        raise DivisionByZero("zero is not a unit candidate")
    return scale_module(m, e) == m.lattice


def colon_module(m: FullModule, n_mod: FullModule) -> FullModule:
    """(M : N) = {x in K : x N <= M}, as a full module."""
    field = m.field
    lat = None
    for b in n_mod.basis:
        s = _right_mult_matrix(b)
        pre = m.lattice.transform(rat_inverse(s))
        lat = pre if lat is None else lat.intersect(pre)
    return FullModule(field, [field.element(r) for r in lat.basis_rows()], lat)


def multiplier_ring(m: FullModule) -> FullModule:
    """The order {x in K : x M <= M}; contains 1 and is multiplicatively closed."""
    return colon_module(m, m)


# --- automorphisms of cubic fields -----------------------------------------


def automorphisms(field: NumberField):
    """All roots of f inside K, as elements g(theta); identity first.

    Length 3 for Galois (normal) totally real cubics, 1 otherwise.  Candidates
    are pinned down by interval linear algebra (disc * coefficients are
    rational integers) and then verified exactly in the field.
    """
    if field.n != 3:
        raise ValueError("automorphisms implemented for degree 3")
    out = [field.theta()]
    disc = polys.discriminant(field.f)
    # candidate permutations of the ascending roots: the two 3-cycles
    for perm in ((1, 2, 0), (2, 0, 1)):
        g = _solve_root_map(field, perm, disc)
        if g is None:
            continue
        # exact verification: f(g(theta)) = 0 in K and g != theta
        img = field.element(g)
        val = polys.poly_eval(field.f.coeffs, img) + field.zero()
        if val.is_zero() and img != field.theta():
            out.append(img)
    return out


def _solve_root_map(field: NumberField, perm, disc):
    """Rational (a, b, c) with a + b t_k + c t_k^2 = t_perm(k) for all roots, or None."""
    w = Fraction(1, 2**24)
    for _ in range(8):
        t = [field.root_interval(k, w) for k in range(3)]
        v = [[RatInterval(1), t[k], t[k] * t[k]] for k in range(3)]
        rhs = [t[perm[k]] for k in range(3)]
        d = interval_det3(v)
        if d.contains_zero():
            w /= 2**16
            continue
        coeffs = []
        ok = True
        for col in range(3):
            vc = [row[:] for row in v]
            for k in range(3):
                vc[k][col] = rhs[k]
            ci = interval_det3(vc) / d * disc
            if ci.width >= 1:
                ok = False
                break
            lo = math.ceil(ci.lo)
            if lo > math.floor(ci.hi):
                return None  # no integer in the interval: not rational
            coeffs.append(Fraction(lo, disc))
        if ok:
            return coeffs
        w /= 2**16
    return None
