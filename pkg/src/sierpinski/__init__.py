"""Exact thickness certificates for the Sierpinski gasket.

Submodules:

``geom``       exact planar kernel in the triangular lattice basis
``gasket``     corner maps, words, cells, stage sets and membership witnesses
``thickness``  local triangle certificates, the upper-bound witness, sampling oracle
``sumset``     Minkowski sums and the many-summand interior bound
``render``     deterministic SVG figures
``cli``        command-line front end (``sierpinski``)
"""

from .exact import SQRT3_OVER_6, QSqrt3
from .gasket import (
    Cell,
    MembershipWitness,
    StageSet,
    apply_map,
    apply_word,
    cell,
    in_stage,
    locate_cells,
    side_dyadics,
    stage,
    stage_area,
    vertex_sample,
)
from .geom import (
    M12,
    M13,
    M23,
    V1,
    V2,
    V3,
    ConvexPolygon,
    Disk,
    Point,
    Triangle,
    convex_hull,
    equilateral_incircle_radius,
    inscribed_disk,
    point_in_triangle,
    side_distances,
)
from .sumset import BoundQuery, SumsetConfig, kominers_min_summands, segment_sum, sumset_sample
from .thickness import (
    Certificate,
    ThicknessReport,
    certificate_disk,
    corner_triangle,
    empirical_inradius,
    local_triangle,
    local_triangle_normalized,
    thickness_scan,
    upper_bound_witness,
)

UNIT_TRIANGLE = Triangle(V1, V2, V3)

__version__ = "0.1.0"

__all__ = [
    "apply_map",
    "apply_word",
    "BoundQuery",
    "Cell",
    "cell",
    "Certificate",
    "certificate_disk",
    "convex_hull",
    "ConvexPolygon",
    "corner_triangle",
    "Disk",
    "empirical_inradius",
    "equilateral_incircle_radius",
    "in_stage",
    "inscribed_disk",
    "kominers_min_summands",
    "local_triangle",
    "local_triangle_normalized",
    "locate_cells",
    "M12",
    "M13",
    "M23",
    "MembershipWitness",
    "Point",
    "point_in_triangle",
    "QSqrt3",
    "segment_sum",
    "side_distances",
    "side_dyadics",
    "SQRT3_OVER_6",
    "stage",
    "stage_area",
    "StageSet",
    "sumset_sample",
    "SumsetConfig",
    "thickness_scan",
    "ThicknessReport",
    "Triangle",
    "UNIT_TRIANGLE",
    "upper_bound_witness",
    "V1",
    "V2",
    "V3",
    "vertex_sample",
]
