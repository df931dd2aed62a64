"""Minkowski sums of gasket samples and the many-summand interior bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .exact import as_fraction
from .gasket import side_dyadics, vertex_sample
from .geom import ConvexPolygon, Disk, Point, convex_hull

DEFAULT_BUDGET = 2_000_000


class BudgetError(ValueError):
    """A sumset enumeration would exceed the configured size budget."""


@dataclass(frozen=True)
class SumsetConfig:
    n_terms: int
    sample_level: int
    coverage_spacing: Fraction = Fraction(1, 32)

    def __post_init__(self):
        if self.n_terms < 1:
            raise ValueError("n_terms must be at least 1")
        if self.sample_level < 0:
            raise ValueError("sample_level must be nonnegative")
        object.__setattr__(self, "coverage_spacing", as_fraction(self.coverage_spacing))
        if self.coverage_spacing <= 0:
            raise ValueError("coverage spacing must be positive")


@dataclass(frozen=True)
class BoundQuery:
    d: int
    c: object

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be a positive integer")
        if not 0 < self.c <= 1:
            raise ValueError(f"thickness must lie in (0, 1], got {self.c}")


@dataclass(frozen=True)
class BoundResult:
    d: int
    c: object
    threshold: float
    n_min: int

    def to_json(self) -> dict:
        from .exact import to_json_value

        return {"d": self.d, "c": to_json_value(self.c), "threshold": self.threshold,
                "n_min": self.n_min}


def kominers_min_summands(q: BoundQuery) -> BoundResult:
    """Smallest integer ``n`` with ``n > sqrt(d) / (sqrt(1 + c) - 1)**2``.

    Above that many summands, compact sets of thickness at least ``c`` in
    ``R^d`` have a sumset with nonempty interior.
    """
    c = float(q.c)
    threshold = math.sqrt(q.d) / (math.sqrt(1.0 + c) - 1.0) ** 2
    return BoundResult(q.d, q.c, threshold, math.floor(threshold) + 1)


def segment_sum(s1: tuple[Point, Point], s2: tuple[Point, Point]) -> ConvexPolygon:
    """Minkowski sum of two segments.

    A parallelogram for independent directions; a flagged two-vertex segment
    when the directions are parallel.
    """
    (a1, b1), (a2, b2) = s1, s2
    if a1 == b1 or a2 == b2:
        raise ValueError("segments must be nondegenerate")
    return convex_hull([a1 + a2, a1 + b2, b1 + a2, b1 + b2])


def minkowski_sum(*sets: Iterable[Point], budget: int = DEFAULT_BUDGET) -> list[Point]:
    """Exact Minkowski sum of finite point sets, deduplicated and sorted."""
    acc = {Point(0, 0)}
    for s in sets:
        s = set(s)
        if len(acc) * len(s) > budget:
            raise BudgetError(f"sumset enumeration needs {len(acc) * len(s)} sums > budget {budget}")
        acc = {a + b for a in acc for b in s}
    return sorted(acc, key=lambda p: (p.u, p.w))


def sumset_sample(cfg: SumsetConfig, budget: int = DEFAULT_BUDGET) -> list[Point]:
    """``n_terms``-fold sum of the level-``sample_level`` vertex sample."""
    base = vertex_sample(cfg.sample_level)
    try:
        return minkowski_sum(*([base] * cfg.n_terms), budget=budget)
    except BudgetError as exc:
        suggestion = max(cfg.sample_level - 1, 0)
        raise BudgetError(f"{exc}; try sample_level={suggestion}") from exc


def side_sum_sample(n: int) -> list[Point]:
    """Sums of the level-``n`` dyadic points on ``[v1, v2]`` and ``[v1, v3]``."""
    bottom = [p for p, _ in side_dyadics("", 1, n)]
    left = [p for p, _ in side_dyadics("", 3, n)]
    return minkowski_sum(bottom, left)


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    worst_gap: float
    nodes: int

    def to_json(self) -> dict:
        return {"covered": self.covered, "worst_gap": self.worst_gap, "nodes": self.nodes,
                "evidence_only": True}


def interior_coverage_check(points: Sequence[Point], disk: Disk, spacing) -> CoverageReport:
    """Check that every grid node of pitch ``spacing`` in ``disk`` has a sample point
    within ``spacing``.

    This is density evidence, not a proof of interior.
    """
    h = float(as_fraction(spacing))
    if h <= 0:
        raise ValueError("spacing must be positive")
    cx, cy = disk.center_xy()
    rad = float(disk.radius)
    k = int(math.floor(rad / h))
    offs = np.arange(-k, k + 1) * h
    gx, gy = np.meshgrid(cx + offs, cy + offs, indexing="ij")
    nodes = np.stack([gx.ravel(), gy.ravel()], axis=1)
    nodes = nodes[np.hypot(nodes[:, 0] - cx, nodes[:, 1] - cy) <= rad + 1e-12]
    if len(nodes) == 0:
        return CoverageReport(False, math.inf, 0)
    if len(points) == 0:
        return CoverageReport(False, math.inf, len(nodes))
    tree = cKDTree(np.array([p.xy() for p in points], dtype=float))
    gaps, _ = tree.query(nodes)
    worst = float(gaps.max())
    return CoverageReport(bool(worst <= h + 1e-12), worst, len(nodes))

