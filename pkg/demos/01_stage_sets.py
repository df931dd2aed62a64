"""Stage sets of the gasket: counts, exact areas, and a stage-4 figure.

Run:  python demos/01_stage_sets.py [output_dir]
"""

import sys
from pathlib import Path

from sierpinski.gasket import stage, stage_area, vertex_sample
from sierpinski.geom import convex_hull
from sierpinski.render import render_stage

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

# Each stage keeps three of the four half-size subtriangles, so the cell count
# triples and the area shrinks by 3/4.  Areas are exact: rational times sqrt3.
print(f"{'m':>2} {'cells':>6}  area")
for m in range(7):
    s = stage(m)
    assert s.area() == stage_area(m)
    print(f"{m:>2} {len(s):>6}  {stage_area(m).b} * sqrt3  = {float(stage_area(m)):.8f}")

# The vertex sample of level n is the finite set of cell corners.  Its convex
# hull is already the whole unit triangle at every level.
for n in (0, 3, 6):
    pts = vertex_sample(n)
    print(f"level {n}: {len(pts)} corner points, hull has {len(convex_hull(pts))} vertices")

path = out / "stage4.svg"
path.write_text(render_stage(4))
print(f"wrote {path}")
