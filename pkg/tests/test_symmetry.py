"""Symmetry detection, Dirichlet groups, canonical forms, the main theorem."""

import pytest

from kleinsail.errors import NotASymmetry, NotGalois
from kleinsail.intmat import IntMatrix, det, is_unimodular
from kleinsail.polys import IntPolynomial
from kleinsail.sail import antipode, geocf_from_operator
from kleinsail.symmetry import (
    CLASS_CONDITIONS,
    F_MATRICES,
    cone_orbit_structure,
    dirichlet_group,
    find_palindromic,
    is_cf_symmetry,
    make_class_example,
    order3_analysis,
    theorem_check,
)

B_EXAMPLE = IntMatrix([[0, 1, 0], [2, 0, 1], [-1, 1, 0]])
F1 = F_MATRICES[1]

CLASS_FIELDS = {
    1: IntPolynomial([1, -3, 0, 1]),
    2: IntPolynomial([1, -2, -1, 1]),
    3: IntPolynomial([-1, -3, 0, 1]),
    4: IntPolynomial([1, -2, -1, 1]),
}


def test_f_matrices_orders():
    for i, f in F_MATRICES.items():
        assert is_unimodular(f)
        cube = f * f * f
        sign = 1 if det(f) == 1 else -1
        expected = IntMatrix.identity(3) if sign == 1 else -IntMatrix.identity(3)
        assert cube == expected


def test_is_cf_symmetry_b_example():
    rep = is_cf_symmetry(F1, B_EXAMPLE)
    assert rep.kind == "palindromic"
    assert rep.det == 1
    assert len(rep.sigma) == 3 and sorted(rep.sigma) == [1, 2, 3]
    assert rep.sigma != (1, 2, 3)  # genuinely a 3-cycle


def test_is_cf_symmetry_rejects():
    shear = IntMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(NotASymmetry) as err:
        is_cf_symmetry(shear, B_EXAMPLE)
    assert err.value.commutator is not None


def test_dirichlet_kind():
    rep = is_cf_symmetry(B_EXAMPLE, B_EXAMPLE)
    assert rep.kind == "dirichlet"


def test_order3_analysis_f3():
    a = make_class_example(3, CLASS_FIELDS[3])
    o3 = order3_analysis(F_MATRICES[3], a)
    assert o3.invariant_line in ((1, 1, 1), (-1, -1, -1))
    assert o3.invariant_plane_normal in ((1, 1, 1), (-1, -1, -1))
    assert o3.g_cubed_sign == 1


def test_dirichlet_group_structure():
    grp = dirichlet_group(B_EXAMPLE)
    assert grp.torsion == -IntMatrix.identity(3)
    e1, e2 = grp.generators
    for e in (e1, e2):
        assert is_unimodular(e)
        assert e * B_EXAMPLE == B_EXAMPLE * e
    assert e1 * e2 == e2 * e1
    # independence: no small relation e1^p e2^q = +-I
    ident = IntMatrix.identity(3)
    from kleinsail.symmetry import _ipow

    for p in range(-3, 4):
        for q in range(-3, 4):
            if (p, q) == (0, 0):
                continue
            m = _ipow(e1, p) * _ipow(e2, q)
            assert m != ident and m != -ident


@pytest.mark.parametrize("class_id", [1, 2, 3, 4])
def test_make_class_example(class_id):
    a = make_class_example(class_id, CLASS_FIELDS[class_id])
    rep = is_cf_symmetry(F_MATRICES[class_id], a)
    assert rep.kind == "palindromic"


def test_make_class_example_rejects_non_galois():
    with pytest.raises(NotGalois):
        make_class_example(1, IntPolynomial([1, -4, 0, 1]))


def test_find_palindromic_b_example():
    cert = find_palindromic(B_EXAMPLE)
    assert cert.found
    assert cert.status == "found"
    assert cert.kind == "palindromic"
    assert cert.canonical_form in (1, 2, 3, 4)
    g = cert.g
    x = cert.X
    f = F_MATRICES[cert.canonical_form]
    g_plus = g if det(g) == 1 else -g
    xi = x * g_plus
    # X G+ X^-1 = F, checked as X G+ = F X over the integers
    assert xi == f * x
    assert cert.condition in CLASS_CONDITIONS.values()


def test_theorem_check_conjugation_invariant():
    x = IntMatrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    from kleinsail.intmat import inverse_rat

    xinv = inverse_rat(x).to_integer()
    conj = x * B_EXAMPLE * xinv
    cert = theorem_check(conj)
    assert cert.found
    assert cert.omega_minpoly is not None


def test_theorem_check_non_galois_conclusive():
    comp = IntMatrix([[0, 0, -1], [1, 0, 4], [0, 1, 0]])  # x^3 - 4x + 1 companion
    cert = theorem_check(comp)
    assert not cert.found
    assert cert.status == "not_palindromic"


def test_cone_orbit_structure():
    cert = find_palindromic(B_EXAMPLE)
    g = cert.g
    gg = geocf_from_operator(B_EXAMPLE)
    g_plus = g if det(g) == 1 else -g
    g_minus = -g_plus
    plus_cycles = cone_orbit_structure(g_plus, gg)
    minus_cycles = cone_orbit_structure(g_minus, gg)
    fixed = order3_analysis(g, B_EXAMPLE).fixed_cone
    assert (fixed,) in plus_cycles
    assert (antipode(fixed),) in plus_cycles
    lengths = sorted(len(c) for c in minus_cycles)
    assert lengths == [2, 6]
    pair = [c for c in minus_cycles if len(c) == 2][0]
    assert set(pair) == {fixed, antipode(fixed)}
