import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sierpinski.exact import SQRT3, QSqrt3
from sierpinski.gasket import vertex_sample
from sierpinski.geom import (
    M12,
    M13,
    M23,
    V1,
    V2,
    V3,
    ConvexPolygon,
    GeometryError,
    Location,
    Point,
    Triangle,
    convex_hull,
    dist2,
    equilateral_incircle_radius,
    inscribed_disk,
    orient,
    point_in_triangle,
    side_distances,
)

DELTA = Triangle(V1, V2, V3)
T1 = Triangle(V1, M12, M13)


def chebyshev_by_triples(xy):
    """Brute-force Chebyshev radius: best feasible circle tangent to three edge lines."""
    p = np.asarray(xy, float)
    e = np.roll(p, -1, 0) - p
    n = np.stack([-e[:, 1], e[:, 0]], 1) / np.linalg.norm(e, axis=1)[:, None]
    c = np.einsum("ij,ij->i", n, p)
    best = 0.0
    for i, j, k in itertools.combinations(range(len(p)), 3):
        a = np.array([[*n[i], -1.0], [*n[j], -1.0], [*n[k], -1.0]])
        if abs(np.linalg.det(a)) < 1e-14:
            continue
        s = np.linalg.solve(a, c[[i, j, k]])
        if s[2] > best and np.all(n @ s[:2] - s[2] - c >= -1e-12):
            best = s[2]
    return best


def grid_max_min_distance(xy, steps=120):
    p = np.asarray(xy, float)
    e = np.roll(p, -1, 0) - p
    n = np.stack([-e[:, 1], e[:, 0]], 1) / np.linalg.norm(e, axis=1)[:, None]
    c = np.einsum("ij,ij->i", n, p)
    gx, gy = np.meshgrid(np.linspace(p[:, 0].min(), p[:, 0].max(), steps),
                         np.linspace(p[:, 1].min(), p[:, 1].max(), steps))
    g = np.stack([gx.ravel(), gy.ravel()], 1)
    return float((g @ n.T - c).min(axis=1).max())


dyadic = st.integers(min_value=0, max_value=256).map(lambda k: Fraction(k, 256))
points = st.builds(Point, dyadic, dyadic)
point_sets = st.lists(points, min_size=1, max_size=40)


def test_cartesian_embedding():
    assert V3.xy() == pytest.approx((0.5, SQRT3 / 2))
    assert V3.y == QSqrt3(0, Fraction(1, 2))
    assert dist2(V2, V3) == 1 and dist2(V1, M23) == Fraction(3, 4)


def test_triangle_normalizes_orientation():
    t = Triangle(V1, V3, V2)
    assert orient(*t.vertices) > 0
    assert t == DELTA
    with pytest.raises(GeometryError):
        Triangle(V1, M12, V2)
    with pytest.raises(GeometryError):
        Triangle(V1, V1, V2)


class TestConvexHull:
    def test_three_vertices(self):
        assert convex_hull([V1, V2, V3]) == DELTA

    def test_midpoints_dropped(self):
        assert convex_hull([V1, V2, V3, M12, M13, M23]) == DELTA

    def test_level5_sample(self):
        assert convex_hull(vertex_sample(5)) == DELTA

    def test_degenerate(self):
        flat = convex_hull([V1, M12, V2])
        assert flat.degenerate and set(flat.vertices) == {V1, V2}
        single = convex_hull([M12, M12])
        assert single.degenerate and single.vertices == (M12,)

    def test_empty(self):
        with pytest.raises(GeometryError, match="empty point set"):
            convex_hull([])

    @given(point_sets)
    def test_idempotent(self, pts):
        h = convex_hull(pts)
        assert convex_hull(h.vertices) == h

    @given(point_sets, point_sets)
    def test_monotone(self, s, extra):
        small, big = convex_hull(s), convex_hull(s + extra)
        if big.degenerate:
            return
        for v in small.vertices:
            assert big.contains(v) is not Location.OUTSIDE

    @given(point_sets)
    def test_every_input_point_is_covered(self, pts):
        h = convex_hull(pts)
        if not h.degenerate:
            assert all(h.contains(p) is not Location.OUTSIDE for p in pts)


class TestInscribedDisk:
    def test_unit_triangle_exact(self):
        d = inscribed_disk(DELTA.as_polygon())
        assert d.radius == QSqrt3(0, Fraction(1, 6))
        assert d.center.xy() == pytest.approx((0.5, SQRT3 / 6), abs=1e-15)
        assert abs(float(d.radius) - 0.2886751) < 1e-7

    def test_unit_square(self):
        sq = ConvexPolygon(tuple(Point.from_xy(x, y) for x, y in [(0, 0), (1, 0), (1, 1), (0, 1)]))
        d = inscribed_disk(sq)
        assert float(d.radius) == pytest.approx(0.5, abs=1e-12)
        assert d.center_xy() == pytest.approx((0.5, 0.5), abs=1e-9)
        assert d.unique

    def test_local_hull_at_m12(self):
        # frozen from the edge-triple brute force on conv(E_8 & B(m12, 1/2))
        sample = [p for p in vertex_sample(8) if dist2(p, M12) <= Fraction(1, 4)]
        hull = convex_hull(sample)
        assert len(sample) == 7472 and len(hull) == 14
        assert float(inscribed_disk(hull).radius) == pytest.approx(0.2486440124146728, abs=1e-12)

    def test_rectangle_center_not_unique(self):
        rect = ConvexPolygon(tuple(Point.from_xy(x, y) for x, y in [(0, 0), (2, 0), (2, 1), (0, 1)]))
        d = inscribed_disk(rect)
        assert float(d.radius) == pytest.approx(0.5, abs=1e-12)
        assert d.unique is False

    def test_degenerate_gives_zero(self):
        d = inscribed_disk(convex_hull([V1, V2]))
        assert d.radius == 0 and d.degenerate

    @settings(max_examples=40, deadline=None)
    @given(st.lists(points, min_size=3, max_size=14))
    def test_lp_matches_triple_enumeration(self, pts):
        h = convex_hull(pts)
        if h.degenerate or float(h.area()) < 1e-4:
            return
        r = float(inscribed_disk(h).radius)
        assert r == pytest.approx(chebyshev_by_triples(h.xy()), abs=1e-9)
        assert grid_max_min_distance(h.xy()) <= r + 1e-12


class TestIncircleRadius:
    def test_values(self):
        assert equilateral_incircle_radius(1) == QSqrt3(0, Fraction(1, 6))
        assert equilateral_incircle_radius(0.8) == pytest.approx(0.2309401, abs=1e-7)
        for n in range(6):
            assert equilateral_incircle_radius(Fraction(1, 2 ** n)) == QSqrt3(0, Fraction(1, 6 * 2 ** n))

    def test_nonpositive(self):
        with pytest.raises(GeometryError):
            equilateral_incircle_radius(0)


class TestSideDistances:
    def test_incenter(self):
        c = DELTA.centroid()
        assert side_distances(c, DELTA) == (QSqrt3(0, Fraction(1, 6)),) * 3

    def test_vertex(self):
        assert sorted(side_distances(V1, DELTA)) == [0, 0, QSqrt3(0, Fraction(1, 2))]

    def test_base_midpoint(self):
        d = side_distances(M12, DELTA)
        assert sorted(d) == [0, QSqrt3(0, Fraction(1, 4)), QSqrt3(0, Fraction(1, 4))]
        assert sum(d, QSqrt3()) == QSqrt3(0, Fraction(1, 2))

    def test_outside(self):
        with pytest.raises(GeometryError, match="point outside triangle"):
            side_distances(Point(1, 1), DELTA)

    @settings(max_examples=60)
    @given(
        st.builds(Point, dyadic, dyadic),
        st.integers(min_value=1, max_value=64).map(lambda k: Fraction(k, 16)),
        st.booleans(),
        st.lists(st.tuples(dyadic, dyadic), min_size=1, max_size=20),
    )
    def test_viviani(self, base, side, flipped, weights):
        a = base
        if flipped:  # downward-pointing lattice triangle
            tri = Triangle(a + Point(side, 0), a + Point(0, side), a + Point(side, side))
        else:
            tri = Triangle(a, a + Point(side, 0), a + Point(0, side))
        altitude = QSqrt3(0, side / 2)
        for s, t in weights:
            if s + t > 1:
                s, t = 1 - s, 1 - t
            z = tri.a + (tri.b - tri.a) * s + (tri.c - tri.a) * t
            d = side_distances(z, tri)
            assert sum(d, QSqrt3()) == altitude
            assert abs(float(sum(d, QSqrt3())) - float(side) * SQRT3 / 2) < 1e-12


class TestPointInTriangle:
    def test_examples(self):
        assert point_in_triangle(M12, T1) is Location.ON_BOUNDARY
        assert point_in_triangle(V3, T1) is Location.OUTSIDE

    def test_rescaled_query_nearest_dyadic(self):
        # Cartesian (0.28, 0.16) rounded to the nearest 2^-10 basis point
        w = round(2 * 0.16 / math.sqrt(3) * 1024)
        u = round((0.28 - 0.16 / math.sqrt(3)) * 1024)
        p = Point(Fraction(u, 1024), Fraction(w, 1024))
        assert p.dyadic
        assert point_in_triangle(p, T1) is Location.INSIDE

    def test_exact_near_boundary(self):
        eps = Fraction(1, 2 ** 60)
        assert point_in_triangle(Point(Fraction(1, 4), -eps), T1) is Location.OUTSIDE
        assert point_in_triangle(Point(Fraction(1, 4), eps), T1) is Location.INSIDE
        assert point_in_triangle(Point(Fraction(1, 4), 0), T1) is Location.ON_BOUNDARY
