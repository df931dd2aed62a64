"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line (with wall time) that is printed in the
terminal summary under "acceptance criteria".
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from sierpinski import cli
from sierpinski.exact import SQRT3_OVER_6, QSqrt3
from sierpinski.gasket import (
    apply_word,
    in_stage,
    side_dyadics,
    snap_to_gasket,
    stage,
    stage_area,
    vertex_sample,
    vertex_sample_array,
)
from sierpinski.geom import M12, M13, V1, V2, V3, Point, Triangle, convex_hull, inscribed_disk
from sierpinski.sumset import BoundQuery, kominers_min_summands, segment_sum
from sierpinski.thickness import (
    empirical_inradius,
    local_triangle,
    outer_inradius,
    thickness_scan,
    upper_bound_witness,
)

TAU = math.sqrt(3) / 6
DELTA = Triangle(V1, V2, V3)


def test_criterion_01_exact_thickness(record_criterion, capsys):
    t0 = time.perf_counter()
    code = cli.main(["witness"])
    report = json.loads(capsys.readouterr().out)
    w = upper_bound_witness()
    elapsed = time.perf_counter() - t0
    symbolic = QSqrt3.from_json(report["inradius"])
    ok = (code == 0 and symbolic == SQRT3_OVER_6 and w.inradius == SQRT3_OVER_6
          and abs(report["inradius"]["float"] - TAU) < 1e-12 and elapsed < 1.0)
    record_criterion(1, ok, f"inradius = {symbolic.b}*sqrt3 = {float(symbolic):.15f}", elapsed)
    assert ok


def test_criterion_02_certificate_sweep(record_criterion):
    t0 = time.perf_counter()
    points = vertex_sample(4)
    radii = [Fraction(k, 32) for k in range(1, 33)]
    failures, count = [], 0
    for x in points:
        for r in radii:
            count += 1
            try:
                cert = local_triangle(x, r)
                cert.check()
                assert cert.triangle.side_lengths2() == (r * r,) * 3
            except Exception as exc:  # collected, reported below
                failures.append((x, r, exc))
    elapsed = time.perf_counter() - t0
    ok = len(points) == 123 and count == 3936 and not failures and elapsed < 10.0
    record_criterion(2, ok, f"{count} certificates, {len(failures)} failures", elapsed)
    assert ok, failures[:3]


def test_criterion_03_oracle_consistency(record_criterion):
    t0 = time.perf_counter()
    radii = [Fraction(k, 32) for k in range(8, 33)]
    report = thickness_scan(10, 4, radii, workers=4)
    low, bad_upper = math.inf, []
    for row in report.rows:
        low = min(low, row.normalized)
        # the hull of all level-10 cells that can meet the ball contains conv(E & B)
        upper = outer_inradius(row.x, row.r, 10)
        if row.inradius > upper + 1e-12:
            bad_upper.append((row.x, row.r))
    spots = [(M12, Fraction(1, 2)), (M13, Fraction(7, 32)), (V2, Fraction(1, 4)),
             (Point(Fraction(3, 8), Fraction(1, 8)), Fraction(5, 16)), (V3, Fraction(3, 32))]
    monotone = True
    for x, r in spots:
        values = [empirical_inradius(x, r, n).radius for n in range(6, 11)]
        monotone &= all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    elapsed = time.perf_counter() - t0
    ok = (len(report.rows) == 123 * 25 and low >= TAU - 0.02 and not bad_upper and monotone
          and elapsed < 120.0)
    record_criterion(3, ok, f"min inradius/r = {low:.6f} over {len(report.rows)} queries; "
                            f"upper violations {len(bad_upper)}; monotone={monotone}", elapsed)
    assert ok


def test_criterion_04_stage_area(record_criterion):
    t0 = time.perf_counter()
    mismatches = []
    for m in range(11):
        enumerated = stage(m).area()
        closed_form = QSqrt3(0, Fraction(3, 4) ** m / 4)
        if not (enumerated == stage_area(m) == closed_form):
            mismatches.append(m)
    elapsed = time.perf_counter() - t0
    ok = not mismatches
    record_criterion(4, ok, f"m = 0..10, mismatches {mismatches}; "
                            f"area(K_10) = {float(stage_area(10)):.12f}", elapsed)
    assert ok


def test_criterion_05_side_witnesses(record_criterion):
    t0 = time.perf_counter()
    base = [(p, wit) for side in (1, 2, 3) for p, wit in side_dyadics("", side, 10)]
    for p, wit in base:
        wit.validate(p)
    ok = len(base) == 3 * (2 ** 10 + 1)
    ok &= all(in_stage(p, m) for p, _ in base for m in range(1, 11))
    rng = random.Random(20240601)
    words = ["".join(rng.choice("123") for _ in range(rng.randint(0, 6))) for _ in range(20)]
    for w in words:
        images = [apply_word(w, p) for p, _ in base]
        ok &= all(in_stage(q, m) for q in images for m in range(1, 11))
    elapsed = time.perf_counter() - t0
    record_criterion(5, ok, f"{len(base)} side dyadics x m = 1..10, plus 20 words "
                            f"(lengths {sorted(len(w) for w in words)})", elapsed)
    assert ok


def test_criterion_06_rescaling_example(record_criterion):
    t0 = time.perf_counter()
    x, wit = snap_to_gasket(0.07, 0.04, 10)
    cert = local_triangle(x, Fraction(1, 5), wit)
    cert.check()
    elapsed = time.perf_counter() - t0
    xy = x.xy()
    ok = (cert.n == 2 and cert.word == "11" and cert.r_normalized == Fraction(4, 5)
          and cert.x_normalized == x * 4
          and cert.triangle.side_lengths2() == (Fraction(1, 25),) * 3
          and math.hypot(xy[0] - 0.07, xy[1] - 0.04) < 0.02)
    record_criterion(6, ok, f"x = ({xy[0]:.4f}, {xy[1]:.4f}), n = {cert.n}, w = {cert.word!r}, "
                            f"r' = {cert.r_normalized}, corner {cert.corner}", elapsed)
    assert ok


def test_criterion_07_kominers_bound(record_criterion):
    t0 = time.perf_counter()
    res = kominers_min_summands(BoundQuery(2, SQRT3_OVER_6))
    elapsed = time.perf_counter() - t0
    ok = abs(res.threshold - 77.37) <= 0.01 and res.n_min == 78
    record_criterion(7, ok, f"threshold = {res.threshold:.6f}, n_min = {res.n_min}", elapsed)
    assert ok


def test_criterion_08_parallelogram(record_criterion):
    t0 = time.perf_counter()
    para = segment_sum((V1, V2), (V1, V3))
    disk = inscribed_disk(para)
    elapsed = time.perf_counter() - t0
    ok = (set(para.vertices) == {V1 + V1, V1 + V2, V2 + V3, V1 + V3}
          and para.area() == QSqrt3(0, Fraction(1, 2)) and disk.radius > 0
          and all(para.contains(p).value != "outside" for p in para.vertices))
    record_criterion(8, ok, f"area = {para.area().b}*sqrt3, inscribed radius = {disk.radius.b}*sqrt3",
                     elapsed)
    assert ok


def _max_dist2(ints: np.ndarray) -> int:
    best = 0
    for start in range(0, len(ints), 512):
        chunk = ints[start:start + 512]
        du = chunk[:, None, 0] - ints[None, :, 0]
        dw = chunk[:, None, 1] - ints[None, :, 1]
        best = max(best, int((du * du + du * dw + dw * dw).max()))
    return best


def test_criterion_09_hull_and_diameter(record_criterion):
    t0 = time.perf_counter()
    ok = True
    for n in range(9):
        ok &= convex_hull(vertex_sample(n)) == DELTA
        ok &= _max_dist2(vertex_sample_array(n)) == 4 ** n  # basis units at scale 2^n
    elapsed = time.perf_counter() - t0
    record_criterion(9, ok, "conv = Delta and diam = 1 for n = 0..8", elapsed)
    assert ok


CLI_RUNS = [
    ["stage", "--level", "5", "--format", "json"],
    ["stage", "--level", "4", "--format", "svg"],
    ["certificate", "--x", "xy:0.07,0.04", "--r", "1/5", "--format", "json"],
    ["certificate", "--x", "xy:0.07,0.04", "--r", "1/5", "--format", "svg"],
    ["scan", "--sample-level", "6", "--query-level", "2", "--format", "csv", "--workers", "4"],
    ["witness"],
    ["sumset", "--n-terms", "2", "--sample-level", "2", "--format", "csv"],
    ["sumset", "--n-terms", "2", "--sample-level", "2", "--format", "svg"],
    ["bound", "--d", "2", "--c", "sqrt3/6"],
    ["render", "sumset"],
]


def test_criterion_10_determinism(record_criterion, tmp_path):
    t0 = time.perf_counter()
    a = thickness_scan(8, 3, workers=1)
    b = thickness_scan(8, 3, workers=8)
    ok = a == b and a.to_json() == b.to_json() and a.csv_rows() == b.csv_rows()
    differing = []
    for k, argv in enumerate(CLI_RUNS):
        outs = []
        for rep in range(2):
            target = tmp_path / f"{k}-{rep}"
            proc = subprocess.run([sys.executable, "-m", "sierpinski", *argv, "--out", str(target)],
                                  capture_output=True)
            outs.append(target.read_bytes() if proc.returncode == 0 else None)
        if outs[0] is None or outs[0] != outs[1]:
            differing.append(argv[0])
    ok &= not differing
    elapsed = time.perf_counter() - t0
    record_criterion(10, ok, f"scan 1 vs 8 workers identical: {a == b}; "
                             f"{len(CLI_RUNS)} CLI artifacts, differing {differing}", elapsed)
    assert ok
