"""Sums of gasket sets.

E + E contains the parallelogram [v1, v2] + [v1, v3], since both segments lie
in the gasket, so it has interior.  For many summands the general bound for
sets of thickness c gives a threshold on n; with c = sqrt3/6 it is 78.

Run:  python demos/04_sumsets.py [output_dir]
"""

import sys
from fractions import Fraction
from pathlib import Path

from sierpinski.exact import SQRT3_OVER_6
from sierpinski.geom import V1, V2, V3, Disk, Point, inscribed_disk
from sierpinski.render import render_sumset
from sierpinski.sumset import (
    BoundQuery,
    SumsetConfig,
    interior_coverage_check,
    kominers_min_summands,
    segment_sum,
    side_sum_sample,
    sumset_sample,
)

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

para = segment_sum((V1, V2), (V1, V3))
print("parallelogram corners:", [f"({p.u}, {p.w})" for p in para.vertices])
print(f"area = {para.area().b} * sqrt3, inscribed radius = {inscribed_disk(para).radius.b} * sqrt3")

# The sampled side sums are only evidence: a dense lattice near the center.
pts = side_sum_sample(6)
rep = interior_coverage_check(pts, Disk(Point(Fraction(1, 2), Fraction(1, 2)), Fraction(1, 5)),
                              Fraction(1, 32))
print(f"{len(pts)} side sums; coverage {rep.covered}, worst gap {rep.worst_gap:.5f}")

for n in (1, 2, 3):
    print(f"{n}-fold sums of the level-2 sample: {len(sumset_sample(SumsetConfig(n, 2)))} points")

res = kominers_min_summands(BoundQuery(2, SQRT3_OVER_6))
print(f"\nthreshold sqrt2/(sqrt(1+c)-1)^2 = {res.threshold:.4f}, so n >= {res.n_min}")

path = out / "sumset.svg"
path.write_text(render_sumset(pts))
print(f"wrote {path}")
