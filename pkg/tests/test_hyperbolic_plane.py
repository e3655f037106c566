import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodesic_gaps.errors import DomainError
from geodesic_gaps.hyperbolic_plane import (
    ORIGIN,
    Frame,
    Geodesic,
    Mobius,
    Point,
    angle_at,
    axis,
    cross,
    dist,
    geodesic_angle,
    geodesic_separation,
    mobius_apply,
    point_geodesic_distance,
)

coord = st.floats(-0.9, 0.9)
points = st.builds(lambda r, t: Point.polar(r, t), st.floats(0.0, 4.0), st.floats(0.0, 2 * math.pi))


def _on_circle(g: Geodesic, z: complex) -> bool:
    circ = g.circle()
    if circ is None:
        e1, _ = g.endpoints
        return abs((z / e1).imag) < 1e-9
    c, r = circ
    return abs(abs(z - c) - r) < 1e-9


def test_point_outside_disk_rejected():
    with pytest.raises(DomainError):
        Point(1.0, 0.0)


def test_polar_distance():
    for d in (0.1, 1.0, 3.5):
        assert dist(ORIGIN, Point.polar(d, 0.7)) == pytest.approx(d, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(points, points, st.floats(0, 3), st.floats(0, 2 * math.pi))
def test_isometries_preserve_distance(p, q, t, ang):
    m = Mobius.translation(t, ang) @ Mobius.rotation(0.3)
    assert dist(mobius_apply(m, p), mobius_apply(m, q)) == pytest.approx(dist(p, q), rel=1e-8, abs=1e-9)


def test_moving_to_origin():
    p = Point(0.3, -0.5)
    assert abs(Mobius.moving_to_origin(p)(p.z)) < 1e-14


def test_compose_and_inverse():
    m = Mobius.translation(1.2, 0.4) @ Mobius.rotation(1.0)
    z = 0.2 + 0.1j
    assert (m @ m.inverse())(z) == pytest.approx(z, abs=1e-12)


def test_translation_trace_and_axis():
    t = 2.0
    m = Mobius.translation(t)
    assert m.kind() == "hyperbolic"
    g, length = axis(m)
    assert length == pytest.approx(t, rel=1e-12)
    ends = sorted(round(e.real, 12) for e in g.endpoints)
    assert ends == [-1.0, 1.0]
    assert g.endpoints[1].real == pytest.approx(1.0)


def test_rotation_is_elliptic():
    assert Mobius.rotation(0.5).kind() == "elliptic"
    with pytest.raises(DomainError):
        axis(Mobius.rotation(0.5))


def test_sl2r_round_trip():
    m = Mobius.translation(0.7, 1.1) @ Mobius.rotation(0.2)
    back = Mobius.from_sl2r(m.to_sl2r())
    for z in (0j, 0.3 + 0.4j, -0.5j):
        assert back(z) == pytest.approx(m(z), abs=1e-12)
    assert np.linalg.det(m.to_sl2r()) == pytest.approx(1.0)


def test_angle_sum_gives_area():
    # equilateral triangle with vertices at distance r from the center
    r = 1.0
    P = [Point.polar(r, 2 * math.pi * k / 3) for k in range(3)]
    s = sum(angle_at(P[k - 1], P[k], P[(k + 1) % 3]) for k in range(3))
    assert 0 < s < math.pi
    # cos of the vertex angle from the hyperbolic law of cosines
    side = dist(P[0], P[1])
    cosA = (math.cosh(side) ** 2 - math.cosh(side)) / math.sinh(side) ** 2
    assert s == pytest.approx(3 * math.acos(cosA), rel=1e-12)


def test_geodesic_circles_are_orthogonal():
    for u, v in ((0.1, 2.0), (1.0, 4.0), (5.0, 0.2)):
        c, r = Geodesic(u, v).circle()
        assert abs(c) ** 2 == pytest.approx(1.0 + r * r, rel=1e-12)


def test_diameter_has_no_circle():
    assert Geodesic(0.0, math.pi).circle() is None


def test_through_contains_points():
    p, q = Point(0.2, 0.3), Point(-0.4, 0.1)
    g = Geodesic.through(p, q)
    assert _on_circle(g, p.z) and _on_circle(g, q.z)


def test_point_at_and_foot():
    g = Geodesic(0.3, 2.5)
    foot = g.foot_from_origin()
    for s in (-1.0, 0.5, 2.0):
        p = g.point_at(s)
        assert _on_circle(g, p.z)
        assert dist(p, foot) == pytest.approx(abs(s), rel=1e-9, abs=1e-12)
    assert point_geodesic_distance(ORIGIN, g) == pytest.approx(dist(ORIGIN, foot), rel=1e-12)


def test_cross_kinds():
    a = Geodesic(0.0, math.pi)
    b = Geodesic(math.pi / 2, 3 * math.pi / 2)
    hit = cross(a, b)
    assert hit.kind == "transversal"
    assert abs(hit.point.z) < 1e-12
    assert cross(a, Geodesic(0.3, 1.0)).kind == "disjoint"
    assert cross(a, Geodesic(0.0, 1.0)).kind == "shared-endpoint"
    assert cross(a, a.reversed()).kind == "identical"
    assert geodesic_angle(a, b) == pytest.approx(math.pi / 2)


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 2 * math.pi), st.floats(0.2, 3.0), st.floats(0, 2 * math.pi), st.floats(0.2, 3.0))
def test_crossing_point_lies_on_both(u1, s1, u2, s2):
    g1, g2 = Geodesic(u1, u1 + s1), Geodesic(u2, u2 + s2)
    hit = cross(g1, g2)
    if hit.kind == "transversal":
        assert _on_circle(g1, hit.point.z) and _on_circle(g2, hit.point.z)


def test_separation_of_perpendiculars():
    # perpendiculars to the real axis at distance d apart
    for d in (0.3, 1.0, 2.5):
        f1 = Frame().turn(math.pi / 2)
        f2 = Frame().forward(d).turn(math.pi / 2)
        assert geodesic_separation(f1.ray(), f2.ray()) == pytest.approx(d, rel=1e-10)
    with pytest.raises(DomainError):
        geodesic_separation(Geodesic(0.0, math.pi), Geodesic(1.0, 4.0))


def test_frame_walks_a_square_that_does_not_close():
    f = Frame()
    for _ in range(4):
        f = f.forward(1.0).turn(math.pi / 2)
    # negative curvature: a right-angled "square" does not return
    assert dist(f.position, ORIGIN) > 0.1
    assert cmath.isclose(Frame().forward(1.0).position.z, math.tanh(0.5))
