import pytest

from algseries.encoding import encode
from algseries.errors import UnsupportedDimension
from algseries.geometry import Cone, ConeBound
from algseries.order import parse_order
from algseries.support import bounded_faces, hull_vertices, minimality_witnesses, support_hull, SupportHull

from helpers import RATIONAL, edge, rational_encodings, quadratic_encoding, poly, vec


def cone(*gens):
    return Cone.from_points([vec(*g) for g in gens], 2)


def test_rational_series_hull():
    phi = rational_encodings()[0]
    hull = support_hull(phi)
    assert hull.vertices == [vec(0, 1), vec(1, 0)]
    assert hull.vertex_cones[vec(1, 0)] == cone((1, 0), (-1, 1))
    assert hull.vertex_cones[vec(0, 1)] == cone((0, 1), (1, -1))
    assert all(hull.verified.values())
    faces = sorted(hull.bounded_faces, key=len)
    assert faces == [[vec(0, 1)], [vec(1, 0)], [vec(0, 1), vec(1, 0)]]


def test_hull_json_round_trip():
    hull = support_hull(rational_encodings()[0])
    back = SupportHull.from_json(hull.to_json())
    assert back.vertices == hull.vertices and back.vertex_cones == hull.vertex_cones
    assert back.bounded_faces == hull.bounded_faces


def test_constant_series_single_vertex():
    const = rational_encodings()[2]
    hull = support_hull(const)
    assert hull.vertices == [vec(0, 0)]


def test_quadratic_hull():
    hull = support_hull(quadratic_encoding())
    # y = 0 makes the series exactly -1 - x, so (1,0) is a vertex next to (0,0)
    assert hull.vertices == [vec(0, 0), vec(1, 0)]
    assert all(hull.verified.values())


def test_quadratic_minimality():
    enc = quadratic_encoding()
    bound = ConeBound((vec(0, 0), vec(1, 0)), vec(1, 1), cone((1, 1), (1, 2)))
    rep = minimality_witnesses(enc, bound)
    assert rep.minimal
    assert dict(rep.rays) == {vec(1, 1): vec(2, 2), vec(1, 2): vec(2, 3)}


def test_non_minimal_bound_reported():
    enc = quadratic_encoding()
    loose = ConeBound((), vec(0, 0), cone((1, 0), (0, 1)))
    rep = minimality_witnesses(enc, loose)
    assert not rep.minimal
    assert dict(rep.rays)[vec(0, 1)] is None


def test_unverified_hull_has_no_faces():
    h = SupportHull([vec(0, 0)], {vec(0, 0): Cone.zero(2)}, [], {vec(0, 0): False})
    with pytest.raises(Exception):
        bounded_faces(h)


def test_univariate_interval():
    (enc,) = encode(poly("(1-x)*z - 1", ["x"]), edge((0, 0), (0, 1)), parse_order("(-1)"))
    hull = support_hull(enc)
    assert hull.vertices == [vec(0)]
