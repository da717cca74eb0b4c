"""Cubic number fields: exact arithmetic, embeddings, modules, automorphisms."""

from fractions import Fraction

import pytest

from kleinsail.numfield import (
    NumberField,
    automorphisms,
    colon_module,
    is_unit_of_module,
    module_from_basis,
    multiplier_ring,
    scale_module,
)
from kleinsail.polys import IntPolynomial

F_GALOIS = IntPolynomial([1, -3, 0, 1])  # x^3 - 3x + 1, cyclic cubic
F_NON_GALOIS = IntPolynomial([1, -4, 0, 1])  # x^3 - 4x + 1


@pytest.fixture(scope="module")
def field():
    return NumberField(F_GALOIS)


def test_theta_satisfies_minpoly(field):
    t = field.theta()
    assert (t * t * t - 3 * t + 1).is_zero()


def test_trace_norm_of_theta(field):
    t = field.theta()
    assert t.trace() == 0
    assert t.norm() == -1
    assert (t * t).trace() == 6  # theta^2 has trace = sum of squares of roots


def test_inverse(field):
    t = field.theta()
    e = t * t - 2
    prod = e * e.inverse()
    assert prod == 1


def test_minpoly_of_generator(field):
    t = field.theta()
    assert t.minpoly() == F_GALOIS
    assert field.from_rational(5).minpoly() == IntPolynomial([-5, 1])


def test_embeddings_are_real_and_distinct(field):
    t = field.theta()
    vals = [float(field.embed(t, i, Fraction(1, 2**30)).mid) for i in (1, 2, 3)]
    assert len({round(v, 6) for v in vals}) == 3
    for v in vals:
        assert abs(v**3 - 3 * v + 1) < 1e-6


def test_automorphism_count():
    assert len(automorphisms(NumberField(F_GALOIS))) == 3
    assert len(automorphisms(NumberField(F_NON_GALOIS))) == 1


def test_automorphisms_fix_minpoly(field):
    t = field.theta()
    for tau_img in automorphisms(field):
        assert tau_img.minpoly() == F_GALOIS
        # composition with an automorphism is a ring map
        e = t * t - t + 2
        assert (e * t).apply_poly_image(tau_img) == e.apply_poly_image(
            tau_img
        ) * t.apply_poly_image(tau_img)


def test_module_and_scaling(field):
    t = field.theta()
    m = module_from_basis((field.from_rational(1), t, t * t))
    assert m.lattice.member((t * t - 3 * t + 7).coords)
    assert not m.lattice.member((t * Fraction(1, 2)).coords)
    sc = scale_module(m, t)
    assert sc.member((t * t).coords)
    cov = m.lattice.covolume()
    assert sc.covolume() == cov * abs(t.norm())


def test_colon_module_and_multiplier_ring(field):
    t = field.theta()
    m = module_from_basis((field.from_rational(1), t, t * t))
    ring = multiplier_ring(m)
    # every multiplier maps the module into itself
    for b in ring.basis:
        assert m.lattice.member((b * t).coords)
    c = colon_module(m, m)
    for b in c.basis:
        assert m.lattice.member(b.coords)
    assert is_unit_of_module(t, m)  # norm(theta) = -1
