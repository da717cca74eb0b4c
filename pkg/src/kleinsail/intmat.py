"""Exact dense linear algebra over Z and Q for small dimensions.

Determinants, characteristic polynomials, inverses, row-style Hermite
normal form, integer kernels, commutant lattices and hyperbolicity tests.
HNF convention (part of the external JSON contract): row-style, upper
triangular, positive pivots, entries above a pivot reduced into [0, pivot).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .errors import (
    ReduciblePolynomial,
    SingularMatrix,
    UnsupportedDimension,
)
from .polys import IntPolynomial


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix with arbitrary-precision integer entries."""

    rows: tuple

    def __init__(self, rows):
        r = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(r)
        if any(len(row) != n for row in r):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", r)

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls([[0] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return IntMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return IntMatrix([[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            n = self.n
            bt = list(zip(*other.rows))
            return IntMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.rows]
            )
        if isinstance(other, int):
            return IntMatrix([[a * other for a in row] for row in self.rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are rational; use inverse_rat")
        out = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def apply(self, vec):
        """Matrix times column vector (tuple)."""
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.rows)

    def transpose(self):
        return IntMatrix(list(zip(*self.rows)))

    def to_rational(self):
        return RatMatrix(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"


@dataclass(frozen=True)
class RatMatrix:
    """Square matrix with exact rational entries."""

    rows: tuple

    def __init__(self, rows):
        r = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(r)
        if any(len(row) != n for row in r):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", r)

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, (RatMatrix, IntMatrix)):
            bt = list(zip(*other.rows))
            return RatMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.rows]
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, IntMatrix):
            bt = list(zip(*self.rows))
            return RatMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in other.rows]
            )
        return NotImplemented

    def apply(self, vec):
        return tuple(sum(Fraction(a) * x for a, x in zip(row, vec)) for row in self.rows)

    def is_integral(self):
        return all(x.denominator == 1 for row in self.rows for x in row)

    def to_integer(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[int(x) for x in row] for row in self.rows])

    def __repr__(self):
        return f"RatMatrix({[list(r) for r in self.rows]})"


# --- determinants and characteristic polynomials ---------------------------


def det(m):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m.rows]
    n = len(a)
    if n == 0:
        return 1
    integral = isinstance(m, IntMatrix)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if integral else num / prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def charpoly(m: IntMatrix) -> IntPolynomial:
    """Monic characteristic polynomial det(xI - m) with integer coefficients."""
    n = m.n
    # det of the polynomial matrix xI - m by cofactor expansion; n <= 3 in
    # practice so the naive expansion is fine.
    entries = [
        [[-m.rows[i][j]] if i != j else [-m.rows[i][j], 1] for j in range(n)] for i in range(n)
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

    if n == 0:
        return IntPolynomial([1])
    return IntPolynomial(pdet(tuple(range(n)), tuple(range(n))))


def is_unimodular(m: IntMatrix) -> bool:
    return det(m) in (1, -1)


def inverse_rat(m: IntMatrix) -> RatMatrix:
    """Exact inverse of an integer matrix as a rational matrix."""
    d = det(m)
    if d == 0:
        raise SingularMatrix("determinant is zero")
    return rat_inverse(m.to_rational())


def rat_inverse(m: RatMatrix) -> RatMatrix:
    n = m.n
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return RatMatrix([row[n:] for row in a])


def rat_solve(m: RatMatrix, rhs):
    """Solve m x = rhs exactly; rhs a tuple, returns a tuple of Fractions."""
    inv = rat_inverse(m)
    return inv.apply(rhs)


# --- Hermite normal form and integer kernels --------------------------------


def hnf_rows(rows):
    """Row-style HNF of the lattice generated by integer row vectors.

    Returns the nonzero rows: upper triangular shape, positive pivots,
    entries above each pivot reduced into [0, pivot).
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        # gather a pivot at row r by gcd elimination in this column
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(mat[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = mat[i][col] // mat[i0][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[i0])]
        nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        mat[r], mat[i0] = mat[i0], mat[r]
        if mat[r][col] < 0:
            mat[r] = [-a for a in mat[r]]
        piv = mat[r][col]
        for i in range(r):
            q = mat[i][col] // piv  # floor division reduces into [0, piv)
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return [tuple(row) for row in mat[:r]]


def hnf_row(rows) -> IntMatrix:
    """HNF as an IntMatrix; requires the lattice to be full rank."""
    h = hnf_rows(rows)
    if not h or len(h) != len(h[0]):
        raise ValueError("lattice is not full rank")
    return IntMatrix(h)


def integer_kernel(rows):
    """Basis of the lattice {x in Z^k : M x^T = 0} for integer matrix rows M.

    Rows of the returned list form a basis of the (saturated) kernel lattice.
    """
    mat = [list(map(int, r)) for r in rows]
    m = len(mat)
    if m == 0:
        raise ValueError("empty matrix")
    k = len(mat[0])
    # rows of [M^T | I_k]; HNF-reduce, kernel rows have zero left part
    aug = [[mat[i][j] for i in range(m)] + [int(i == j) for i in range(k)] for j in range(k)]
    red = _hnf_full(aug)
    out = []
    for row in red:
        if all(x == 0 for x in row[:m]):
            vec = row[m:]
            if any(vec):
                out.append(tuple(vec))
    return out


def _hnf_full(mat):
    """Row HNF keeping all rows (zero rows at the bottom)."""
    mat = [list(r) for r in mat]
    if not mat:
        return mat
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(mat[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = mat[i][col] // mat[i0][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[i0])]
        nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        mat[r], mat[i0] = mat[i0], mat[r]
        if mat[r][col] < 0:
            mat[r] = [-a for a in mat[r]]
        piv = mat[r][col]
        for i in range(r):
            q = mat[i][col] // piv
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return mat


def primitive_vector(vec):
    """Divide an integer vector by the gcd of its entries; first nonzero > 0."""
    g = math.gcd(*[abs(int(x)) for x in vec])
    if g == 0:
        raise ValueError("zero vector")
    v = [int(x) // g for x in vec]
    lead = next(x for x in v if x != 0)
    if lead < 0:
        v = [-x for x in v]
    return tuple(v)


def lll_reduce(rows, delta=Fraction(3, 4)):
    """LLL-reduced basis of the integer lattice spanned by the given rows.

    Exact rational Gram-Schmidt; the spans agree, the output vectors are
    short.  Used to make shell enumerations over module bases effective.
    """
    basis = [list(map(int, r)) for r in rows]
    n = len(basis)

    def gram():
        star = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in basis[i]]
            for j in range(i):
                denom = sum(x * x for x in star[j])
                mu[i][j] = (
                    sum(Fraction(basis[i][k]) * star[j][k] for k in range(len(v)))
                    / denom
                )
                v = [v[k] - mu[i][j] * star[j][k] for k in range(len(v))]
            star.append(v)
        return star, mu

    star, mu = gram()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[j])]
        star, mu = gram()
        bk = sum(x * x for x in star[k])
        bk1 = sum(x * x for x in star[k - 1])
        if bk >= (delta - mu[k][k - 1] ** 2) * bk1:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            star, mu = gram()
            k = max(k - 1, 1)
    return [tuple(r) for r in basis]


# --- commutant and hyperbolicity -------------------------------------------


def commutant_lattice(a: IntMatrix):
    """Z-basis of {X integer : XA = AX}, HNF-canonical under vectorization.

    Requires charpoly(a) irreducible over Q (so the commutant is the ring Q[a]).
    """
    chi = charpoly(a)
    if not polys.is_irreducible(chi):
        raise ReduciblePolynomial(f"characteristic polynomial {chi!r} is reducible")
    n = a.n
    # linear system on vec(X): (XA - AX) entry (i,j) = sum_k X[i,k]A[k,j] - A[i,k]X[k,j]
    rows = []
    for i in range(n):
        for j in range(n):
            coeff = [0] * (n * n)
            for k in range(n):
                coeff[i * n + k] += a.rows[k][j]
                coeff[k * n + j] -= a.rows[i][k]
            rows.append(coeff)
    ker = integer_kernel(rows)
    basis = hnf_rows(ker)
    if len(basis) != n:
        raise ReduciblePolynomial("commutant rank is not n; charpoly must be irreducible")
    return [IntMatrix([vec[i * n : (i + 1) * n] for i in range(n)]) for vec in basis]


def is_hyperbolic(a: IntMatrix) -> bool:
    """Unimodular, irreducible characteristic polynomial, all roots real."""
    n = a.n
    if n not in (2, 3):
        raise UnsupportedDimension(f"dimension {n} not supported")
    if not is_unimodular(a):
        return False
    chi = charpoly(a)
    if not polys.is_irreducible(chi):
        return False
    disc = polys.discriminant(chi)
    # degree 2: disc > 0 (non-square is implied by irreducibility);
    # degree 3: disc > 0 iff three distinct real roots
    return disc > 0


# --- JSON wire format -------------------------------------------------------


def matrix_to_json(m):
    """JSON array of arrays of decimal integer strings."""
    return [[str(x) for x in row] for row in m.rows]


def matrix_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    return IntMatrix([[int(x) for x in row] for row in data])


def polynomial_to_json(p: IntPolynomial):
    """JSON array of coefficient strings, constant term first."""
    return [str(c) for c in p.coeffs]


def polynomial_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    return IntPolynomial([int(c) for c in data])
