"""Local triangle certificates and a sampling oracle for gasket thickness.

For a gasket point ``x`` and a radius ``0 < r <= 1`` the certificate is an
equilateral triangle ``Q`` of side exactly ``r`` whose vertices lie on cell
sides (so in the gasket) and within distance ``r`` of ``x``.  Its incircle,
of radius ``r*sqrt(3)/6``, therefore sits inside the local hull
``conv(E & B(x, r))``.  Radii are first rescaled into ``[1/2, 1]`` through
the cell containing ``x``; there one of the three corner triangles works.

:func:`empirical_inradius` estimates the same local inradius from the finite
cell-vertex sample without using any certificate logic, and serves as an
independent check.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .exact import SQRT3, SQRT3_OVER_6, QSqrt3, as_fraction, format_rational, to_json_value
from .gasket import (
    MembershipWitness,
    WitnessError,
    apply_word,
    check_level,
    find_witness,
    inverse_word,
    locate_cells,
    side_witness,
    vertex_sample,
    vertex_sample_array,
)
from .geom import (
    V1,
    V2,
    V3,
    VERTICES,
    ConvexPolygon,
    Disk,
    Point,
    Triangle,
    convex_hull,
    dist2,
    equilateral_incircle_radius,
    inscribed_disk,
    side_distances,
)

DEFAULT_RADII = tuple(Fraction(k, 32) for k in range(1, 33))


class CertificateError(AssertionError):
    """A certificate failed one of its exact invariants."""


def _radius(r) -> Fraction:
    r = as_fraction(r)
    if not 0 < r <= 1:
        raise ValueError(f"radius must lie in (0, 1], got {r}")
    return r


def scale_index(r) -> int:
    """Smallest ``n >= 0`` with ``2**n * r >= 1/2``.

    At a tie ``r = 2**-(n+1)`` this picks the coarser scale, giving a
    normalized radius of exactly ``1/2``.
    """
    r = _radius(r)
    n = 0
    while r * 2 ** n < Fraction(1, 2):
        n += 1
    return n


def _corner_vertices(i: int, r: Fraction) -> tuple[Point, Point, Point]:
    apex = VERTICES[i - 1]
    others = [v for k, v in enumerate(VERTICES, start=1) if k != i]
    return (apex, apex + (others[0] - apex) * r, apex + (others[1] - apex) * r)


def corner_triangle(i: int, r) -> Triangle:
    """Equilateral triangle of side ``r`` sharing the corner ``v_i`` with Delta."""
    if i not in (1, 2, 3):
        raise ValueError(f"corner index must be 1, 2 or 3, got {i}")
    r = as_fraction(r)
    if not Fraction(1, 2) <= r <= 1:
        raise ValueError(f"normalized range violated: r = {r} not in [1/2, 1]")
    return Triangle(*_corner_vertices(i, r))


def _normalized(x: Point, r: Fraction) -> tuple[int, tuple[Point, Point, Point]]:
    cells = locate_cells(x, 1)
    if not cells:
        raise WitnessError("point not in gasket stage 1")
    i = int(cells[0])
    verts = _corner_vertices(i, r)
    r2 = r * r
    for v in verts:
        if dist2(v, x) > r2:
            raise CertificateError(f"corner vertex {v!r} farther than {r} from {x!r}")
    return i, verts


def local_triangle_normalized(x: Point, r) -> tuple[int, Triangle]:
    """Corner index and triangle for a radius in the normalized range.

    The corner is the smallest ``i`` with ``x`` in the first-level cell
    ``T_i``; all three vertices are checked to lie in ``B(x, r)``.
    """
    r = as_fraction(r)
    if not Fraction(1, 2) <= r <= 1:
        raise ValueError(f"normalized range violated: r = {r} not in [1/2, 1]")
    i, verts = _normalized(x, r)
    for v in verts:
        side_witness("", v)
    return i, Triangle(*verts)


@dataclass(frozen=True)
class Certificate:
    x: Point
    r: Fraction
    n: int
    word: str
    corner: int
    triangle: Triangle
    incircle: Disk
    vertex_witnesses: tuple[MembershipWitness, MembershipWitness, MembershipWitness]
    x_witness: MembershipWitness
    x_normalized: Point
    r_normalized: Fraction

    def check(self) -> None:
        """Verify every exact invariant; raise :class:`CertificateError` on failure."""
        r2 = self.r * self.r
        if any(s != r2 for s in self.triangle.side_lengths2()):
            raise CertificateError("certificate triangle is not equilateral of side r")
        for v, wit in zip(self.triangle.vertices, self.vertex_witnesses):
            if dist2(v, self.x) > r2:
                raise CertificateError(f"vertex {v!r} outside B(x, r)")
            try:
                wit.validate(v)
            except WitnessError as exc:
                raise CertificateError(str(exc)) from exc
        try:
            self.x_witness.validate(self.x)
        except WitnessError as exc:
            raise CertificateError(str(exc)) from exc
        if self.incircle.radius != equilateral_incircle_radius(self.r):
            raise CertificateError("incircle radius is not r*sqrt(3)/6")
        dists = side_distances(self.incircle.center, self.triangle)
        if any(d < self.incircle.radius for d in dists):
            raise CertificateError("incircle leaves the triangle")
        if len(self.word) != self.n or not Fraction(1, 2) <= self.r_normalized <= 1:
            raise CertificateError("inconsistent scale data")

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "x_witness": self.x_witness.to_json(),
            "r": to_json_value(self.r),
            "n": self.n,
            "word": self.word,
            "corner": self.corner,
            "r_normalized": to_json_value(self.r_normalized),
            "x_normalized": self.x_normalized.to_json(),
            "Q": self.triangle.to_json(),
            "incircle": self.incircle.to_json(),
            "witnesses": [w.to_json() for w in self.vertex_witnesses],
        }


def local_triangle(x: Point, r, witness: MembershipWitness | None = None) -> Certificate:
    """Certificate triangle for the query ``(x, r)``.

    ``witness`` must name ``x``; when omitted one is searched for among cell
    sides down to the level cap.
    """
    r = _radius(r)
    if witness is None:
        witness = find_witness(x)
        if witness is None:
            raise WitnessError(f"no membership witness found for {x!r}")
    else:
        witness.validate(x)

    n = scale_index(r)
    cells = locate_cells(x, n)
    if not cells:
        raise WitnessError(f"{x!r} is not in stage {n}")
    w = cells[0]
    x_norm = inverse_word(w, x)
    r_norm = r * 2 ** n
    i, verts = _normalized(x_norm, r_norm)

    q_verts = tuple(apply_word(w, v) for v in verts)
    # phi_w carries side s of Delta onto side s of Delta_w with the same parameter
    by_vertex = {}
    for v, qv in zip(verts, q_verts):
        base = side_witness("", v)
        by_vertex[qv] = MembershipWitness.on_side(w, base.side_index, base.t)
    tri = Triangle(*q_verts)
    wits = [by_vertex[v] for v in tri.vertices]
    incircle = Disk(tri.centroid(), equilateral_incircle_radius(r), unique=True)
    cert = Certificate(x, r, n, w, i, tri, incircle, tuple(wits), witness, x_norm, r_norm)
    cert.check()
    return cert


def certificate_disk(cert: Certificate) -> Disk:
    """Inscribed disk of the certificate triangle, computed from scratch."""
    return inscribed_disk(cert.triangle.as_polygon())


class UpperBoundWitness(NamedTuple):
    x: Point
    r: Fraction
    inradius: QSqrt3
    hull: ConvexPolygon


def upper_bound_witness() -> UpperBoundWitness:
    """The query ``(v1, 1)``: the local hull is the whole unit triangle.

    No disk of radius above ``sqrt(3)/6`` fits in it, which caps the thickness.
    """
    x, r = V1, Fraction(1)
    sample = [p for p in vertex_sample(0) if dist2(p, x) <= r * r]
    hull = convex_hull(sample)
    if hull != Triangle(V1, V2, V3):
        raise CertificateError("local hull at (v1, 1) is not the unit triangle")
    return UpperBoundWitness(x, r, inscribed_disk(hull).radius, hull)


class InradiusEstimate(NamedTuple):
    """``sample_size`` counts the points handed to the hull; with pruning these
    are only the candidates that can be hull vertices."""

    radius: float
    degenerate: bool
    sample_size: int
    hull_size: int

    def __float__(self):
        return self.radius


def _xy(ints: np.ndarray, scale: int) -> np.ndarray:
    f = ints.astype(float) / scale
    return np.stack([f[:, 0] + f[:, 1] / 2, f[:, 1] * SQRT3 / 2], axis=1)


class _Ball:
    """Exact closed-disk membership for integer lattice points at scale ``2**n``."""

    def __init__(self, x: Point, r: Fraction, n: int):
        self.x, self.r, self.scale = x, r, 2 ** n
        self.r2 = r * r
        self.cx, self.cy = x.xy()
        self.rf = float(r)

    def contains(self, ints: np.ndarray) -> np.ndarray:
        xy = _xy(ints, self.scale)
        d2 = (xy[:, 0] - self.cx) ** 2 + (xy[:, 1] - self.cy) ** 2
        r2 = self.rf * self.rf
        mask = d2 <= r2
        close = np.flatnonzero(np.abs(d2 - r2) <= 1e-9)
        for k in close:
            p = Point(Fraction(int(ints[k, 0]), self.scale), Fraction(int(ints[k, 1]), self.scale))
            mask[k] = dist2(p, self.x) <= self.r2
        return mask

    def far(self, centers: np.ndarray, circumradius: float) -> np.ndarray:
        d = np.hypot(centers[:, 0] - self.cx, centers[:, 1] - self.cy)
        return d > self.rf + circumradius + 1e-9


_CHILD = np.array([[0, 0], [1, 0], [0, 1]], dtype=np.int64)


def _cell_walk(ball: _Ball, n: int, outer: bool) -> np.ndarray:
    """Candidate points whose hull equals the hull of the sample in the ball.

    Cells entirely inside the ball contribute only their three vertices;
    cells entirely outside are dropped.  With ``outer`` set, every level-``n``
    cell that may meet the ball contributes all three vertices instead, which
    yields a hull containing ``conv(E & B)``.
    """
    emitted = []
    origins = np.zeros((1, 2), dtype=np.int64)
    for k in range(n + 1):
        s = 2 ** (n - k)
        base = origins * s
        verts = np.stack([base, base + [s, 0], base + [0, s]], axis=1)  # (m, 3, 2)
        flat = verts.reshape(-1, 2)
        inside = ball.contains(flat).reshape(-1, 3)
        full = inside.all(axis=1)
        emitted.append(verts[full].reshape(-1, 2))
        centers = _xy(flat, 2 ** n).reshape(-1, 3, 2).mean(axis=1)
        circum = s / 2 ** n / math.sqrt(3)
        partial = ~full & ~ball.far(centers, circum)
        if k == n:
            if outer:
                emitted.append(verts[partial].reshape(-1, 2))
            else:
                emitted.append(flat[(inside & partial[:, None]).reshape(-1)])
            break
        parents = origins[partial]
        origins = (2 * parents[:, None, :] + _CHILD[None, :, :]).reshape(-1, 2)
        if len(origins) == 0:
            break
    if not emitted:
        return np.zeros((0, 2), dtype=np.int64)
    pts = np.concatenate(emitted)
    return np.unique(pts, axis=0) if len(pts) else pts


def _hull_inradius(ints: np.ndarray, n: int) -> InradiusEstimate:
    m = len(ints)
    if m < 3:
        return InradiusEstimate(0.0, True, m, m)
    scale = 2 ** n
    try:
        # basis coordinates are exact floats; the hull is affine-invariant
        idx = ConvexHull(ints.astype(float)).vertices
    except QhullError:
        return InradiusEstimate(0.0, True, m, 2)
    pts = [Point(Fraction(int(ints[k, 0]), scale), Fraction(int(ints[k, 1]), scale)) for k in idx]
    hull = convex_hull(pts)
    if hull.degenerate:
        return InradiusEstimate(0.0, True, m, len(hull))
    radius = inscribed_disk(hull, check_unique=False).radius
    return InradiusEstimate(float(radius), False, m, len(hull))


def empirical_inradius(x: Point, r, sample_level: int, prune: bool = True) -> InradiusEstimate:
    """Inradius of the hull of the level-``sample_level`` vertex sample inside ``B(x, r)``.

    This is an inner estimate of the inradius of ``conv(E & B(x, r))``.
    Empty or collinear samples give radius 0 flagged ``degenerate``.
    ``prune=False`` filters the full sample instead of walking the cell tree;
    both give the same hull.
    """
    check_level(sample_level)
    r = as_fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    ball = _Ball(x, r, sample_level)
    if prune:
        pts = _cell_walk(ball, sample_level, outer=False)
    else:
        sample = vertex_sample_array(sample_level)
        pts = sample[ball.contains(sample)]
    return _hull_inradius(pts, sample_level)


def outer_inradius(x: Point, r, level: int) -> float:
    """Inradius of the hull of all level-``level`` cells that can meet ``B(x, r)``.

    Since the gasket lies in the union of those cells, this bounds the true
    local inradius from above.
    """
    check_level(level)
    ball = _Ball(x, as_fraction(r), level)
    return _hull_inradius(_cell_walk(ball, level, outer=True), level).radius


@dataclass(frozen=True)
class ScanRow:
    x: Point
    r: Fraction
    inradius: object
    normalized: object
    degenerate: bool


@dataclass(frozen=True)
class ThicknessReport:
    exact_value: QSqrt3
    numeric_lower: object
    witness_upper: float
    sample_level: int
    query_level: int
    radii: tuple[Fraction, ...]
    mode: str
    rows: tuple[ScanRow, ...] = field(repr=False)
    argmin: tuple[Point, Fraction] | None = None

    @property
    def degenerate(self) -> tuple[ScanRow, ...]:
        return tuple(row for row in self.rows if row.degenerate)

    def to_json(self) -> dict:
        x, r = self.argmin if self.argmin else (None, None)
        return {
            "exact_value": self.exact_value.to_json(),
            "attained": True,
            "numeric_lower": to_json_value(self.numeric_lower),
            "witness_upper": self.witness_upper,
            "grid": {
                "sample_level": self.sample_level,
                "query_level": self.query_level,
                "radii": [f"{q.numerator}/{q.denominator}" for q in self.radii],
                "mode": self.mode,
            },
            "argmin": None if x is None else {"x": x.to_json(), "r": f"{r.numerator}/{r.denominator}"},
            "pairs": len(self.rows),
            "degenerate": len(self.degenerate),
        }

    def csv_rows(self) -> list[list[str]]:
        out = [["x_u", "x_w", "r", "inradius", "normalized", "degenerate_flag"]]
        for row in self.rows:
            out.append([
                format_rational(row.x.u), format_rational(row.x.w),
                f"{row.r.numerator}/{row.r.denominator}",
                repr(float(row.inradius)), repr(float(row.normalized)),
                str(int(row.degenerate)),
            ])
        return out


def thickness_scan(
    sample_level: int,
    query_level: int,
    radii: Sequence = DEFAULT_RADII,
    workers: int = 1,
    mode: str = "sample",
) -> ThicknessReport:
    """Minimum of ``inradius / r`` over gasket sample points and radii.

    ``mode="sample"`` uses :func:`empirical_inradius`; ``mode="certificate"``
    uses the exact certificate disks instead.  Pairs are evaluated
    independently (optionally on a thread pool) and reduced with ``min``, so
    the report does not depend on ``workers``.
    """
    radii = tuple(sorted({_radius(r) for r in radii}))
    if not radii:
        raise ValueError("empty radii list")
    if mode not in ("sample", "certificate"):
        raise ValueError(f"unknown scan mode {mode!r}")
    check_level(query_level)
    if mode == "sample":
        check_level(sample_level)
    queries = vertex_sample(query_level)
    pairs = [(x, r) for x in queries for r in radii]

    def evaluate(pair) -> ScanRow:
        x, r = pair
        if mode == "certificate":
            rad = certificate_disk(local_triangle(x, r)).radius
            return ScanRow(x, r, rad, rad / r, False)
        est = empirical_inradius(x, r, sample_level)
        return ScanRow(x, r, est.radius, est.radius / float(r), est.degenerate)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(evaluate, pairs))
    else:
        rows = tuple(map(evaluate, pairs))

    best = None
    for row in rows:
        if not row.degenerate and (best is None or row.normalized < best.normalized):
            best = row
    return ThicknessReport(
        exact_value=SQRT3_OVER_6,
        numeric_lower=None if best is None else best.normalized,
        witness_upper=float(upper_bound_witness().inradius),
        sample_level=sample_level,
        query_level=query_level,
        radii=radii,
        mode=mode,
        rows=rows,
        argmin=None if best is None else (best.x, best.r),
    )
