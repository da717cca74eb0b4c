"""Periodic continued fractions, cyclic palindromes, planar symmetries."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleinsail.errors import PerfectSquareD
from kleinsail.intmat import IntMatrix, det
from kleinsail.quadratic import (
    QuadraticSurd,
    cf_expand,
    cf_value,
    eigen_slopes,
    find_symmetries_2d,
    has_element_axis,
    is_cyclic_palindrome,
    operator_from_period,
    prop1_witness_search,
    surd_conjugate,
    surd_norm,
    surd_trace,
)


def test_surd_validation():
    with pytest.raises(PerfectSquareD):
        QuadraticSurd(0, 1, 9)
    with pytest.raises(ZeroDivisionError):
        QuadraticSurd(1, 0, 2)


def test_cf_expansion_oracles():
    assert cf_expand(QuadraticSurd(0, 1, 2)).preperiod == (1,)
    assert cf_expand(QuadraticSurd(0, 1, 2)).period == (2,)
    golden = QuadraticSurd(1, 2, 5)
    assert cf_expand(golden).preperiod == ()
    assert cf_expand(golden).period == (1,)
    assert cf_expand(QuadraticSurd(0, 1, 7)).period == (1, 1, 1, 4)


def test_cf_value_roundtrip():
    for s in (QuadraticSurd(0, 1, 13), QuadraticSurd(3, 2, 17), QuadraticSurd(1, 2, 5)):
        cf = cf_expand(s)
        assert cf_value(cf.preperiod, cf.period) == s


@given(st.integers(2, 400))
@settings(max_examples=80, deadline=None)
def test_sqrt_period_palindrome(d):
    """Classical: the period of sqrt(D) is (a1..a_{t-1}, 2a0) with palindromic body."""
    import math

    if math.isqrt(d) ** 2 == d:
        return
    period = cf_expand(QuadraticSurd(0, 1, d)).period
    assert is_cyclic_palindrome(period).is_palindrome


def test_palindrome_axes():
    rep = is_cyclic_palindrome((1, 2, 2, 1))
    assert rep.is_palindrome
    kinds = {ax.type for ax in rep.axes}
    assert kinds == {"between-elements"}
    assert has_element_axis((2,))
    assert not is_cyclic_palindrome((1, 2, 3)).is_palindrome


def test_galois_reversal_example():
    # alpha = [1,2,3] purely periodic; -1/alpha' has the reversed period
    from kleinsail.quadratic import surd_from_quad

    s = cf_value((), (1, 2, 3))
    conj = surd_conjugate(s)
    inv_neg = surd_from_quad(-(conj.value().inverse()))
    cf = cf_expand(inv_neg)
    rev = tuple(reversed((1, 2, 3)))
    rots = {cf.period[i:] + cf.period[:i] for i in range(len(cf.period))}
    assert rev in rots


def test_operator_from_period_golden():
    a = operator_from_period((1,))
    assert a == IntMatrix([[1, 1], [1, 0]])
    alpha, beta = eigen_slopes(a)
    assert alpha.d == 5 and (alpha * beta).is_rational()


def test_prop1_witness_golden():
    golden = QuadraticSurd(1, 2, 5)
    rep = prop1_witness_search(golden, 10)
    assert surd_trace(golden) == 1 and surd_norm(golden) == -1
    assert "trace_one" in rep.found_conditions
    assert rep.status("trace_one") == "found"
    w = rep.witnesses["trace_one"]
    assert surd_trace(w.omega) == 1


def test_find_symmetries_2d_golden_rotation():
    a = IntMatrix([[1, 1], [1, 0]])
    syms = find_symmetries_2d(a, 1)
    rot = IntMatrix([[0, -1], [1, 0]])
    pal = [s for s in syms if s.kind == "palindromic"]
    assert any(s.g in (rot, -rot) for s in pal)
    assert all(det(s.g) == 1 for s in pal if s.g * s.g != IntMatrix.identity(2))
