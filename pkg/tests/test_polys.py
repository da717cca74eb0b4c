"""Integer polynomial arithmetic, root isolation, irreducibility."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from kleinsail.polys import (
    IntPolynomial,
    discriminant,
    has_rational_root,
    is_irreducible,
    is_squarefree,
    isolate_real_roots,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    refine_root,
)

coeff_lists = st.lists(st.integers(-9, 9), min_size=1, max_size=6)


def test_eval_and_degree():
    p = IntPolynomial([1, -3, 0, 1])  # x^3 - 3x + 1
    assert p.degree == 3
    assert p(0) == 1
    assert p(2) == 3
    assert p(Fraction(1, 2)) == Fraction(-3, 8)


def test_derivative():
    p = IntPolynomial([5, 0, -3, 2])
    assert p.derivative() == IntPolynomial([0, -6, 6])


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_mul_matches_eval(a, b):
    x = 3
    assert poly_eval(poly_mul(a, b), x) == poly_eval(a, x) * poly_eval(b, x)


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_divmod_identity(a, b):
    b = list(IntPolynomial(b).coeffs)  # strip leading zeros
    if not b:
        return
    q, r = poly_divmod(a, b)
    x = Fraction(7, 2)
    assert poly_eval(a, x) == poly_eval(q, x) * poly_eval(b, x) + poly_eval(r, x)


def test_gcd_of_multiples():
    g = [1, 1]  # x + 1
    a = poly_mul(g, [2, 0, 1])
    b = poly_mul(g, [-1, 1])
    d = poly_gcd(a, b)
    # gcd is x + 1 up to a rational scalar
    assert len(d) == 2 and Fraction(d[0]) / d[1] == 1


def test_rational_root_detection():
    assert has_rational_root(IntPolynomial([-2, 1, 0, 1]))  # root x = 1? no: check
    # x^3 + x - 2 = (x - 1)(x^2 + x + 2)
    assert has_rational_root(IntPolynomial([-2, 1, 0, 1]))
    assert not has_rational_root(IntPolynomial([1, -3, 0, 1]))


def test_irreducibility_cubics():
    assert is_irreducible(IntPolynomial([1, -3, 0, 1]))  # x^3 - 3x + 1
    assert is_irreducible(IntPolynomial([-1, -3, 0, 1]))  # x^3 - 3x - 1
    assert not is_irreducible(IntPolynomial([-2, 1, 0, 1]))


def test_discriminant_values():
    # disc(x^3 + px + q) = -4p^3 - 27q^2
    assert discriminant(IntPolynomial([1, -3, 0, 1])) == 81
    assert discriminant(IntPolynomial([1, 1, 0, 1])) == -31
    assert discriminant(IntPolynomial([1, 0, 1])) == -4


def test_squarefree():
    assert is_squarefree(IntPolynomial([1, -3, 0, 1]))
    assert not is_squarefree(IntPolynomial(poly_mul([1, 1], [1, 1])))


def test_isolate_real_roots_totally_real_cubic():
    p = IntPolynomial([1, -3, 0, 1])
    ivs = isolate_real_roots(p)
    assert len(ivs) == 3
    for lo, hi in ivs:
        assert lo < hi
        assert p(lo) * p(hi) < 0
    # intervals pairwise disjoint and ordered
    assert ivs == sorted(ivs)
    assert all(a[1] <= b[0] for a, b in zip(ivs, ivs[1:]))


def test_refine_root_narrows():
    p = IntPolynomial([-2, 0, 1])  # sqrt(2)
    iv = [v for v in isolate_real_roots(p) if v[0] >= 0][0]
    lo, hi = refine_root(p, iv, Fraction(1, 10**12))
    assert hi - lo <= Fraction(1, 10**12)
    assert lo * lo <= 2 <= hi * hi
