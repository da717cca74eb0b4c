"""Planar Klein polygons: certified vertices against a brute-force oracle."""

import pytest

from kleinsail.errors import RationalCone
from kleinsail.intmat import IntMatrix
from kleinsail.quadratic import (
    QuadraticSurd,
    _cone_signs,
    eigen_slopes,
    klein_polygon,
)


def brute_sail(alpha, beta, cone, box):
    """Origin-facing hull chain of the cone's lattice points in a box."""
    from kleinsail.quadratic import _convex_hull, _near_chain

    pts = [
        (x, y)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if (x, y) != (0, 0) and _cone_signs((x, y), alpha, beta) == cone
    ]
    return _near_chain(pts)


def test_fibonacci_vertices():
    a = IntMatrix([[1, 1], [1, 0]])
    alpha, beta = eigen_slopes(a)
    cone = _cone_signs((1, 1), alpha, beta)
    verts = klein_polygon(alpha, beta, cone, 6)
    vset = {tuple(map(abs, v)) for v in verts}
    # consecutive Fibonacci pairs appear as sail vertices of the golden cone
    assert {(1, 1), (3, 2), (3, 5), (8, 13)} <= vset


def test_matches_brute_hull_sqrt2():
    s = QuadraticSurd(0, 1, 2)
    s2 = QuadraticSurd(0, -1, 2)
    alpha, beta = s.value(), s2.value()
    for sample in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        cone = _cone_signs(sample, alpha, beta)
        verts = klein_polygon(alpha, beta, cone, 6)
        chain = brute_sail(alpha, beta, cone, 60)
        # soundness: every computed vertex inside the box is a box-chain vertex
        boxed = {v for v in verts if max(abs(v[0]), abs(v[1])) <= 60}
        assert boxed <= set(chain)
        # completeness: the innermost chain vertices all appear in the window
        inner = [v for v in chain if max(abs(v[0]), abs(v[1])) <= 7]
        assert set(inner) <= set(verts)


def test_vertex_count_and_order():
    s = QuadraticSurd(1, 1, 17)
    s2 = QuadraticSurd(1, -1, 17)
    alpha, beta = s.value(), s2.value()
    cone = _cone_signs((1, 0), alpha, beta)
    verts = klein_polygon(alpha, beta, cone, 10)
    assert len(verts) == 10
    assert len(set(verts)) == 10
    # all returned points lie strictly inside the cone
    for v in verts:
        assert _cone_signs(v, alpha, beta) == cone


def test_deep_vertices_are_hull_extreme():
    """Every returned vertex is extreme within the returned set plus origin."""
    from fractions import Fraction

    s = QuadraticSurd(0, 1, 13)
    s2 = QuadraticSurd(0, -1, 13)
    alpha, beta = s.value(), s2.value()
    cone = _cone_signs((1, 0), alpha, beta)
    verts = klein_polygon(alpha, beta, cone, 8)
    for i in range(1, len(verts) - 1):
        (x0, y0), (x1, y1), (x2, y2) = verts[i - 1], verts[i], verts[i + 1]
        cross = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
        assert cross != 0  # consecutive triples never collinear
    # convexity toward the origin: origin on the same side of every edge
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        side_origin = x0 * y1 - y0 * x1
        assert side_origin != 0


def test_rational_cone_rejected():
    with pytest.raises(RationalCone):
        klein_polygon(
            QuadraticSurd(0, 1, 2).value(),
            QuadraticSurd(0, 1, 2).value(),
            "++",
            4,
        )
