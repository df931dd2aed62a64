"""Compare the exact thickness with brute-force hull estimates.

The certificates give inradius >= (sqrt3/6) r for every ball; the ball of
radius 1 at a corner shows that is sharp.  The sampling oracle knows nothing
about certificates: it takes all level-n corner points inside B(x, r),
builds their convex hull and measures the largest inscribed disk.

Run:  python demos/03_thickness_numerics.py
"""

import math
from fractions import Fraction

from sierpinski.geom import M12
from sierpinski.thickness import empirical_inradius, outer_inradius, thickness_scan

tau = math.sqrt(3) / 6
print(f"exact value sqrt3/6 = {tau:.12f}\n")

# Finer samples can only grow the hull, so the estimate climbs with n and is
# capped by the hull of the cells that might meet the ball.
x, r = M12, Fraction(1, 2)
print(f"ball at m12, r = 1/2 (upper bracket {outer_inradius(x, r, 9):.6f})")
for n in range(4, 11):
    est = empirical_inradius(x, r, n)
    print(f"  n = {n:>2}: {est.sample_size:>6} candidates, hull {est.hull_size:>3} vertices, "
          f"inradius/r = {est.radius / float(r):.6f}")

radii = [Fraction(k, 8) for k in range(2, 9)]
rep = thickness_scan(8, 3, radii, workers=4)
print(f"\nscan over {len(rep.rows)} (x, r) pairs: min inradius/r = {rep.numeric_lower:.6f}")
print(f"attained at x = {rep.argmin[0].xy()}, r = {rep.argmin[1]}")

cert = thickness_scan(0, 3, radii, mode="certificate")
print(f"certificate mode min = {cert.numeric_lower} (exact)")
