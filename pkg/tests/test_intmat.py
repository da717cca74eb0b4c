"""Exact integer/rational matrix algebra, lattice normal forms, LLL."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleinsail.errors import SingularMatrix
from kleinsail.intmat import (
    IntMatrix,
    charpoly,
    commutant_lattice,
    det,
    hnf_rows,
    integer_kernel,
    inverse_rat,
    is_hyperbolic,
    is_unimodular,
    lll_reduce,
    matrix_from_json,
    matrix_to_json,
    primitive_vector,
    rat_solve,
)

B_EXAMPLE = IntMatrix([[0, 1, 0], [2, 0, 1], [-1, 1, 0]])

mat3 = st.lists(
    st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3
).map(IntMatrix)


def test_det_examples():
    assert det(IntMatrix.identity(3)) == 1
    assert det(B_EXAMPLE) == -1
    assert det(IntMatrix([[2, 0], [0, 3]])) == 6


@given(mat3, mat3)
@settings(max_examples=50, deadline=None)
def test_det_multiplicative(a, b):
    assert det(a * b) == det(a) * det(b)


def test_charpoly_b_example():
    # x^3 - 3x + 1: trace 0, second invariant -3, det -1
    assert charpoly(B_EXAMPLE).coeffs == (1, -3, 0, 1)


@given(mat3)
@settings(max_examples=40, deadline=None)
def test_cayley_hamilton(a):
    chi = charpoly(a)
    total = IntMatrix.zero(3)
    power = IntMatrix.identity(3)
    for c in chi.coeffs:
        total = total + IntMatrix([[c * x for x in row] for row in power.rows])
        power = power * a
    assert total == IntMatrix.zero(3)


def test_inverse_and_solve():
    inv = inverse_rat(B_EXAMPLE)
    prod = inv * B_EXAMPLE
    assert prod.is_integral() and prod.to_integer() == IntMatrix.identity(3)
    with pytest.raises(SingularMatrix):
        inverse_rat(IntMatrix([[1, 2], [2, 4]]))
    sol = rat_solve(inverse_rat(IntMatrix.identity(3)), [1, 2, 3])
    assert sol == (Fraction(1), Fraction(2), Fraction(3))


def test_unimodular():
    assert is_unimodular(B_EXAMPLE)
    assert not is_unimodular(IntMatrix([[2, 0], [0, 1]]))


def test_hnf_is_lattice_invariant():
    rows = [(2, 4, 4), (-6, 6, 12), (10, 4, 16)]
    h1 = hnf_rows(rows)
    # shuffle and mix rows by unimodular operations: same lattice, same HNF
    mixed = [
        tuple(a + b for a, b in zip(rows[0], rows[1])),
        rows[1],
        tuple(a - 2 * b for a, b in zip(rows[2], rows[1])),
    ]
    assert h1 == hnf_rows(mixed)


def test_integer_kernel():
    ker = integer_kernel([(1, 1, 1)])
    assert len(ker) == 2
    for v in ker:
        assert sum(v) == 0


def test_primitive_vector():
    assert primitive_vector((2, 4, 6)) in ((1, 2, 3), (-1, -2, -3))


def test_lll_preserves_lattice_and_shortens():
    rows = [(1, 0, 0), (251, 1, 0), (39083, 0, 1)]
    red = lll_reduce(rows)
    assert hnf_rows(list(red)) == hnf_rows(rows)
    assert max(abs(x) for row in red for x in row) < 300


@given(
    st.lists(
        st.lists(st.integers(-40, 40), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
@settings(max_examples=40, deadline=None)
def test_lll_lattice_invariance(rows):
    rows = [tuple(r) for r in rows]
    if det(IntMatrix(rows)) == 0:
        return
    assert hnf_rows(list(lll_reduce(rows))) == hnf_rows(rows)


def test_commutant_of_b_example():
    basis = commutant_lattice(B_EXAMPLE)
    assert len(basis) == 3
    for m in basis:
        assert m * B_EXAMPLE == B_EXAMPLE * m


def test_hyperbolicity():
    assert is_hyperbolic(B_EXAMPLE)
    assert is_hyperbolic(IntMatrix([[1, 1], [1, 0]]))
    assert not is_hyperbolic(IntMatrix.identity(3))
    assert not is_hyperbolic(IntMatrix([[0, -1], [1, 0]]))  # complex spectrum


def test_json_roundtrip():
    doc = matrix_to_json(B_EXAMPLE)
    assert doc == [["0", "1", "0"], ["2", "0", "1"], ["-1", "1", "0"]]
    assert matrix_from_json(doc) == B_EXAMPLE
