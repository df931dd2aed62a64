"""Planar geometry in the triangular lattice basis.

Points are stored by their coefficients ``(u, w)`` in the basis
``e1 = (1, 0)`` and ``e2 = (1/2, sqrt(3)/2)``, so every vertex of every
gasket cell has dyadic rational coordinates.  The Cartesian embedding is
``(u + w/2, w*sqrt(3)/2)``.  In this basis

* squared distances are rational: ``du^2 + du*dw + dw^2``;
* the Cartesian cross product equals ``det * sqrt(3)/2`` where ``det`` is the
  rational basis determinant, so orientation tests are exact;
* areas are rational multiples of ``sqrt(3)``.

Float coordinates are accepted for derived views (e.g. polygons given in
Cartesian floats); exactness guarantees only hold for rational input.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .exact import SQRT3, QSqrt3, as_fraction, format_rational, is_dyadic, rational_sqrt


class GeometryError(ValueError):
    pass


def _coerce(value):
    if isinstance(value, float):
        return value
    return as_fraction(value)


@dataclass(frozen=True, slots=True)
class Point:
    u: Fraction
    w: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", _coerce(self.u))
        object.__setattr__(self, "w", _coerce(self.w))

    @classmethod
    def from_xy(cls, x: float, y: float) -> "Point":
        """Float point from Cartesian coordinates (inexact view)."""
        w = 2.0 * y / SQRT3
        return cls(float(x) - w / 2.0, w)

    @property
    def exact(self) -> bool:
        return isinstance(self.u, Fraction) and isinstance(self.w, Fraction)

    @property
    def dyadic(self) -> bool:
        return self.exact and is_dyadic(self.u) and is_dyadic(self.w)

    @property
    def x(self):
        return self.u + self.w / 2

    @property
    def y(self):
        """Cartesian ordinate; exact ``QSqrt3`` for rational points."""
        if self.exact:
            return QSqrt3(0, self.w / 2)
        return self.w * SQRT3 / 2

    def xy(self) -> tuple[float, float]:
        return (float(self.u) + float(self.w) / 2.0, float(self.w) * SQRT3 / 2.0)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.u + other.u, self.w + other.w)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.u - other.u, self.w - other.w)

    def __mul__(self, k) -> "Point":
        return Point(self.u * k, self.w * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Point":
        if isinstance(k, int):
            k = Fraction(k)
        return Point(self.u / k, self.w / k)

    def __neg__(self) -> "Point":
        return Point(-self.u, -self.w)

    def norm2(self):
        """Squared Euclidean length (rational for exact points)."""
        return self.u * self.u + self.u * self.w + self.w * self.w

    def to_json(self) -> dict:
        x, y = self.xy()
        if self.exact:
            return {"u": format_rational(self.u), "w": format_rational(self.w), "x": x, "y": y}
        return {"u": float(self.u), "w": float(self.w), "x": x, "y": y}

    @classmethod
    def from_json(cls, obj: dict) -> "Point":
        u, w = obj["u"], obj["w"]
        if isinstance(u, str):
            return cls(as_fraction(u), as_fraction(w))
        return cls(float(u), float(w))

    def __repr__(self):
        if self.exact:
            return f"Point({self.u}, {self.w})"
        return f"Point({self.u!r}, {self.w!r})"


V1 = Point(0, 0)
V2 = Point(1, 0)
V3 = Point(0, 1)
M12 = Point(Fraction(1, 2), 0)
M13 = Point(0, Fraction(1, 2))
M23 = Point(Fraction(1, 2), Fraction(1, 2))
VERTICES = (V1, V2, V3)

NAMED_POINTS = {"v1": V1, "v2": V2, "v3": V3, "m12": M12, "m13": M13, "m23": M23}


def dist2(p: Point, q: Point):
    return (p - q).norm2()


def orient(a: Point, b: Point, c: Point):
    """Basis determinant of ``(b - a, c - a)``.

    Positive for a counterclockwise turn.  The Cartesian cross product is this
    value times ``sqrt(3)/2``, so its sign is decided exactly.
    """
    return (b.u - a.u) * (c.w - a.w) - (b.w - a.w) * (c.u - a.u)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class Location(enum.Enum):
    INSIDE = "inside"
    ON_BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True, eq=False)
class Triangle:
    """Nondegenerate triangle, vertices stored counterclockwise."""

    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        if self.a == self.b or self.b == self.c or self.a == self.c:
            raise GeometryError("triangle vertices must be pairwise distinct")
        o = orient(self.a, self.b, self.c)
        if o == 0:
            raise GeometryError("degenerate triangle")
        if o < 0:
            b, c = self.b, self.c
            object.__setattr__(self, "b", c)
            object.__setattr__(self, "c", b)

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)

    def edges(self):
        a, b, c = self.vertices
        return ((a, b), (b, c), (c, a))

    def side_lengths2(self):
        return tuple(dist2(p, q) for p, q in self.edges())

    def area(self):
        return polygon_area(self.vertices)

    def centroid(self) -> Point:
        return (self.a + self.b + self.c) / 3

    def as_polygon(self) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices)

    def map(self, f) -> "Triangle":
        return Triangle(f(self.a), f(self.b), f(self.c))

    def __eq__(self, other):
        if isinstance(other, Triangle):
            return frozenset(self.vertices) == frozenset(other.vertices)
        if isinstance(other, ConvexPolygon):
            return other == self.as_polygon()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def to_json(self) -> list:
        return [p.to_json() for p in self.vertices]


def _canonical(vertices: Sequence[Point]) -> tuple[Point, ...]:
    if not vertices:
        return ()
    k = min(range(len(vertices)), key=lambda i: (vertices[i].w, vertices[i].u))
    return tuple(vertices[k:]) + tuple(vertices[:k])


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex counterclockwise vertex chain.

    One or two vertices mean a degenerate hull (a point or a segment); such
    polygons have ``degenerate`` set and zero area.
    """

    vertices: tuple[Point, ...]
    degenerate: bool = field(default=False)

    def __post_init__(self):
        verts = _canonical(tuple(self.vertices))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "degenerate", len(verts) < 3)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if isinstance(other, Triangle):
            other = other.as_polygon()
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def area(self):
        return polygon_area(self.vertices) if not self.degenerate else 0

    def xy(self) -> np.ndarray:
        return np.array([p.xy() for p in self.vertices], dtype=float).reshape(-1, 2)

    def contains(self, p: Point) -> Location:
        """Classify ``p`` against the closed polygon."""
        if self.degenerate:
            raise GeometryError("containment test on a degenerate polygon")
        on_edge = False
        for a, b in self.edges():
            s = _sign(orient(a, b, p))
            if s < 0:
                return Location.OUTSIDE
            if s == 0:
                on_edge = True
        return Location.ON_BOUNDARY if on_edge else Location.INSIDE

    def to_json(self) -> dict:
        return {"vertices": [p.to_json() for p in self.vertices], "degenerate": self.degenerate}


def polygon_area(vertices: Sequence[Point]):
    """Area of a simple polygon; exact ``QSqrt3`` for rational vertices."""
    n = len(vertices)
    if n < 3:
        return 0
    twice = sum(
        vertices[i].u * vertices[(i + 1) % n].w - vertices[(i + 1) % n].u * vertices[i].w
        for i in range(n)
    )
    twice = abs(twice)
    if isinstance(twice, Fraction):
        return QSqrt3(0, twice / 4)
    return float(twice) * SQRT3 / 4.0


def convex_hull(points: Iterable[Point]) -> ConvexPolygon:
    """Monotone-chain hull with exact orientation tests.

    Collinear boundary points are dropped.  Collinear input yields a flat
    two-vertex polygon and a single distinct point a one-vertex polygon, both
    flagged degenerate.
    """
    pts = sorted(set(points), key=lambda p: (p.u, p.w))
    if not pts:
        raise GeometryError("empty point set")
    if len(pts) <= 2:
        return ConvexPolygon(tuple(pts))

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        # all collinear: keep the two extremes
        return ConvexPolygon((pts[0], pts[-1]))
    return ConvexPolygon(tuple(hull))


def point_in_triangle(p: Point, tri: Triangle) -> Location:
    return tri.as_polygon().contains(p)


def equilateral_incircle_radius(side):
    """Inradius ``side*sqrt(3)/6`` of an equilateral triangle."""
    if side <= 0:
        raise GeometryError("side length must be positive")
    if isinstance(side, (int, Fraction)):
        return QSqrt3(0, Fraction(side) / 6)
    return float(side) * SQRT3 / 6.0


def _line_distance(p: Point, a: Point, b: Point):
    """Distance from ``p`` to line ``ab``; ``QSqrt3`` when the edge length is rational."""
    det = abs(orient(a, b, p))
    length2 = dist2(a, b)
    if isinstance(det, Fraction) and isinstance(length2, Fraction):
        length = rational_sqrt(length2)
        if length is not None:
            return QSqrt3(0, det / (2 * length))
    return float(det) * SQRT3 / 2.0 / math.sqrt(float(length2))


def side_distances(z: Point, tri: Triangle):
    """Perpendicular distances from ``z`` to the sides ``ab``, ``bc``, ``ca``.

    For an equilateral triangle of side ``s`` they sum to ``s*sqrt(3)/2``.
    """
    if point_in_triangle(z, tri) is Location.OUTSIDE:
        raise GeometryError("point outside triangle")
    return tuple(_line_distance(z, a, b) for a, b in tri.edges())


@dataclass(frozen=True)
class Disk:
    """Closed disk. ``center`` is a Point or a Cartesian float pair."""

    center: Point | tuple[float, float]
    radius: object
    degenerate: bool = False
    unique: bool | None = None

    def __post_init__(self):
        if self.radius < 0:
            raise GeometryError("negative radius")

    def center_xy(self) -> tuple[float, float]:
        if isinstance(self.center, Point):
            return self.center.xy()
        return (float(self.center[0]), float(self.center[1]))

    def contains(self, p: Point) -> bool:
        """Closed containment; exact when center, point and radius are exact."""
        if isinstance(self.center, Point) and self.center.exact and p.exact:
            r2 = self.radius * self.radius
            return dist2(p, self.center) <= r2
        cx, cy = self.center_xy()
        px, py = p.xy()
        return math.hypot(px - cx, py - cy) <= float(self.radius) + 1e-12

    def to_json(self) -> dict:
        from .exact import to_json_value

        center = self.center.to_json() if isinstance(self.center, Point) else {
            "x": self.center[0], "y": self.center[1]}
        return {
            "center": center,
            "radius": to_json_value(self.radius),
            "degenerate": self.degenerate,
            "unique": self.unique,
        }


def _incircle_exact(tri: Triangle) -> Disk:
    a, b, c = tri.vertices
    # side opposite each vertex
    la2, lb2, lc2 = dist2(b, c), dist2(c, a), dist2(a, b)
    if all(isinstance(v, Fraction) for v in (la2, lb2, lc2)):
        la, lb, lc = rational_sqrt(la2), rational_sqrt(lb2), rational_sqrt(lc2)
        if None not in (la, lb, lc):
            perimeter = la + lb + lc
            center = (a * la + b * lb + c * lc) / perimeter
            # r = 2*area/perimeter with area = |det|*sqrt3/4
            radius = QSqrt3(0, abs(orient(a, b, c)) / (2 * perimeter))
            return Disk(center, radius, unique=True)
    pa, pb, pc = (np.array(p.xy()) for p in (a, b, c))
    la, lb, lc = (float(np.linalg.norm(pb - pc)), float(np.linalg.norm(pc - pa)),
                  float(np.linalg.norm(pa - pb)))
    perimeter = la + lb + lc
    center = (la * pa + lb * pb + lc * pc) / perimeter
    radius = float(abs(orient(a, b, c))) * SQRT3 / 2.0 / perimeter
    return Disk((float(center[0]), float(center[1])), radius, unique=True)


def _parallelogram_disk(poly: ConvexPolygon) -> Disk | None:
    a, b, c, d = poly.vertices
    if b - a != c - d or d - a != c - b:
        return None
    e1, e2 = b - a, d - a
    l1, l2 = e1.norm2(), e2.norm2()
    if not (isinstance(l1, Fraction) and isinstance(l2, Fraction)):
        return None
    s1, s2 = rational_sqrt(l1), rational_sqrt(l2)
    if s1 is None or s2 is None:
        return None
    area = polygon_area(poly.vertices)
    h1, h2 = area / s1, area / s2
    radius = min(h1, h2) / 2
    return Disk((a + c) / 2, radius, unique=(h1 == h2))


def chebyshev_center(vertices_xy: np.ndarray, check_unique: bool = True
                     ) -> tuple[np.ndarray, float, bool | None]:
    """Largest inscribed disk of a convex CCW polygon given in Cartesian floats.

    Solves ``max rho  s.t.  n_i . c - rho >= n_i . p_i`` with HiGHS, then
    re-solves the active constraints as a linear system to polish the optimum
    to roughly machine precision.  Returns ``(center, radius, unique)``;
    ``unique`` is None when ``check_unique`` is off (it costs four more LPs).
    """
    p = np.asarray(vertices_xy, dtype=float)
    q = np.roll(p, -1, axis=0)
    edge = q - p
    length = np.linalg.norm(edge, axis=1)
    normal = np.stack([-edge[:, 1], edge[:, 0]], axis=1) / length[:, None]  # inward for CCW
    offset = np.einsum("ij,ij->i", normal, p)

    a_ub = np.hstack([-normal, np.ones((len(p), 1))])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=-offset,
        bounds=[(None, None), (None, None), (0.0, None)],
        method="highs",
    )
    if res.status != 0:
        raise GeometryError(f"inscribed-disk LP failed: {res.message}")
    center, rho = res.x[:2], float(res.x[2])

    slack = normal @ center - rho - offset
    active = np.flatnonzero(slack < 1e-7 * max(1.0, rho))
    if len(active) >= 3:
        sys_a = np.hstack([normal[active], -np.ones((len(active), 1))])
        sol, *_ = np.linalg.lstsq(sys_a, offset[active], rcond=None)
        if np.all(normal @ sol[:2] - sol[2] - offset >= -1e-12) and abs(sol[2] - rho) < 1e-6:
            center, rho = sol[:2], float(sol[2])

    unique = _center_unique(normal, offset, rho) if check_unique else None
    return center, rho, unique


def _center_unique(normal, offset, rho, tol=1e-9) -> bool:
    a_ub = -normal
    b_ub = -(offset + rho - tol)
    spread = []
    for axis in range(2):
        lo_hi = []
        for sgn in (1.0, -1.0):
            obj = np.zeros(2)
            obj[axis] = sgn
            res = linprog(obj, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * 2, method="highs")
            if res.status != 0:
                return True
            lo_hi.append(res.x[axis])
        spread.append(abs(lo_hi[0] - lo_hi[1]))
    # a thin slab of width ~tol always remains; a genuine segment of optima is much longer
    return bool(max(spread) < 1e-5)


def inscribed_disk(poly: ConvexPolygon, check_unique: bool = True) -> Disk:
    """Maximum-radius disk contained in a convex polygon.

    Triangles use the analytic incircle (exact when side lengths are
    rational), parallelograms the half-height rule, and everything else the
    linear program of :func:`chebyshev_center`.  Degenerate polygons give a
    zero-radius disk flagged ``degenerate``.
    """
    if poly.degenerate:
        if not poly.vertices:
            raise GeometryError("empty polygon")
        return Disk(poly.vertices[0], 0, degenerate=True, unique=None)
    if len(poly) == 3:
        return _incircle_exact(Triangle(*poly.vertices))
    if len(poly) == 4 and all(p.exact for p in poly.vertices):
        disk = _parallelogram_disk(poly)
        if disk is not None:
            return disk
    center, rho, unique = chebyshev_center(poly.xy(), check_unique)
    return Disk((float(center[0]), float(center[1])), rho, unique=unique)
