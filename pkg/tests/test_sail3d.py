"""Spatial sails: exact eigendata, cone bookkeeping, patches, export."""

from fractions import Fraction

import pytest

from kleinsail.errors import EmptyPatch, NotHyperbolic
from kleinsail.intmat import IntMatrix
from kleinsail.sail import (
    ALL_CONES,
    antipode,
    cone_action,
    export_patch,
    geocf_from_operator,
    locate_cone,
    patch_from_json,
    sail_patch,
)

B_EXAMPLE = IntMatrix([[0, 1, 0], [2, 0, 1], [-1, 1, 0]])


@pytest.fixture(scope="module")
def gcf():
    return geocf_from_operator(B_EXAMPLE)


def test_rejects_non_hyperbolic():
    with pytest.raises(NotHyperbolic):
        geocf_from_operator(IntMatrix.identity(3))
    with pytest.raises(NotHyperbolic):
        geocf_from_operator(IntMatrix([[2, 0, 0], [0, 3, 0], [0, 0, 4]]))


def test_eigenvector_relations(gcf):
    """A v = theta v over the field, v normalized to first coordinate 1."""
    th = gcf.field.theta()
    for i in range(3):
        lhs = sum(
            (gcf.field.from_rational(B_EXAMPLE.rows[i][j]) * gcf.v[j] for j in range(3)),
            gcf.field.zero(),
        )
        assert lhs == th * gcf.v[i]
    assert gcf.v[0] == 1


def test_alpha_beta_generate_field(gcf):
    assert gcf.alpha == gcf.v[1]
    assert gcf.beta == gcf.v[2]
    assert not gcf.alpha.is_rational()


def test_cone_bookkeeping(gcf):
    assert len(ALL_CONES) == 8
    c = locate_cone((1, 1, 1), gcf)
    assert c in ALL_CONES
    assert antipode(c) == tuple(-s for s in c)
    assert locate_cone((-1, -1, -1), gcf) == antipode(c)


def test_operator_preserves_cones(gcf):
    """A hyperbolic operator with positive eigenvalues fixes every cone; the
    B-example has a negative eigenvalue, so its square fixes all cones."""
    act2 = cone_action(B_EXAMPLE * B_EXAMPLE, gcf)
    assert set(act2) == set(ALL_CONES)
    act = cone_action(B_EXAMPLE, gcf)
    # a bijection on cones in all cases
    assert sorted(act.values()) == sorted(ALL_CONES)


def test_sail_patch_and_export(gcf):
    cone = locate_cone((1, 1, 1), gcf)
    patch = sail_patch(gcf, cone, Fraction(4))
    assert patch.vertices
    certified = patch.certified_vertices()
    assert certified
    for v in patch.vertices:
        assert locate_cone(v, gcf) == cone
    off = export_patch(patch, fmt="off")
    assert off.startswith(b"OFF\n")
    js = export_patch(patch, fmt="json")
    back = patch_from_json(js)
    assert back == patch
    # byte-identical determinism
    assert export_patch(patch, fmt="json") == js


def test_empty_patch(gcf):
    cone = locate_cone((1, 1, 1), gcf)
    with pytest.raises(EmptyPatch):
        sail_patch(gcf, cone, Fraction(0))
