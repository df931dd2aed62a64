"""Command-line front end.

Exit codes: 0 ok, 2 usage or input error, 3 level/resource cap, 4 internal
invariant violation.  Failures print a JSON object ``{"error": ..., "kind":
...}`` on stderr.  Artifacts go to stdout or, with ``--out``, are written
atomically through a temporary file in the target directory.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import gasket, render, sumset, thickness
from .exact import QSqrt3, parse_number, parse_rational, to_json_value
from .geom import NAMED_POINTS, V1, V2, V3, Disk, Point, inscribed_disk

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4

FORMATS = {
    "stage": ("json", "csv", "svg"),
    "certificate": ("json", "svg"),
    "scan": ("json", "csv"),
    "witness": ("json",),
    "sumset": ("json", "csv", "svg"),
    "bound": ("json",),
    "render": ("svg",),
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_point(text: str, sample_level: int = 10) -> tuple[Point, gasket.MembershipWitness | None]:
    """Named point, exact basis pair ``u,w``, or ``xy:X,Y`` snapped onto the gasket."""
    key = text.strip().lower()
    if key in NAMED_POINTS:
        p = NAMED_POINTS[key]
        return p, gasket.find_witness(p, 1)
    if key.startswith("xy:"):
        try:
            x, y = (float(s) for s in key[3:].split(","))
        except ValueError as exc:
            raise UsageError(f"bad Cartesian point {text!r}") from exc
        return gasket.snap_to_gasket(x, y, sample_level)
    parts = key.split(",")
    if len(parts) != 2:
        raise UsageError(f"bad point {text!r}: use v1|v2|v3|m12|m13|m23, 'u,w' or 'xy:X,Y'")
    try:
        return Point(parse_rational(parts[0]), parse_rational(parts[1])), None
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_radius(text: str) -> Fraction:
    value = parse_number(text)
    if isinstance(value, QSqrt3):
        raise UsageError("radius must be rational")
    return value


def parse_radii(text: str | None):
    if not text:
        return thickness.DEFAULT_RADII
    return tuple(parse_radius(s) for s in text.split(",") if s.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sierpinski", description="Thickness certificates for the Sierpinski gasket.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, name):
        p.add_argument("--format", choices=FORMATS[name], default=FORMATS[name][0])
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--dry-run", action="store_true", help="validate arguments and exit")
        p.add_argument("--seed", type=int, default=None, help="reserved for grid jitter (off)")

    p = sub.add_parser("stage", help="enumerate the cells of a stage set")
    p.add_argument("--level", type=int, required=True)
    common(p, "stage")

    p = sub.add_parser("certificate", help="certificate triangle for a query (x, r)")
    p.add_argument("--x", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--sample-level", type=int, default=10, help="snap level for xy: points")
    common(p, "certificate")

    p = sub.add_parser("scan", help="numerical thickness scan")
    p.add_argument("--sample-level", type=int, default=8)
    p.add_argument("--query-level", type=int, default=3)
    p.add_argument("--radii", help="comma-separated rationals (default k/32, k=1..32)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mode", choices=("sample", "certificate"), default="sample")
    common(p, "scan")

    p = sub.add_parser("witness", help="the upper-bound witness (v1, 1)")
    common(p, "witness")

    p = sub.add_parser("sumset", help="n-fold sums of a vertex sample")
    p.add_argument("--n-terms", type=int, default=2)
    p.add_argument("--sample-level", type=int, default=2)
    p.add_argument("--spacing", default="1/32")
    common(p, "sumset")

    p = sub.add_parser("bound", help="many-summand interior bound")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--c", default="sqrt3/6")
    common(p, "bound")

    p = sub.add_parser("render", help="SVG figure")
    p.add_argument("subject", choices=("stage", "certificate", "sumset"))
    p.add_argument("--level", type=int, default=4)
    p.add_argument("--x", default="xy:0.07,0.04")
    p.add_argument("--r", default="1/5")
    p.add_argument("--sample-level", type=int, default=10)
    common(p, "render")
    return parser


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _stage(args) -> str:
    gasket.check_level(args.level)
    if args.format == "svg":
        return render.render_stage(args.level)
    st = gasket.stage(args.level)
    if args.format == "csv":
        rows = [["word", "a_u", "a_w", "b_u", "b_w", "c_u", "c_w"]]
        for c in st.cells:
            row = [c.word]
            for v in c.triangle.vertices:
                row += [v.to_json()["u"], v.to_json()["w"]]
            rows.append(row)
        return _csv(rows)
    out = st.to_json()
    out["area"] = to_json_value(gasket.stage_area(args.level))
    return _json(out)


def _certificate(args) -> str:
    x, wit = parse_point(args.x, args.sample_level)
    cert = thickness.local_triangle(x, parse_radius(args.r), wit)
    if args.format == "svg":
        return render.render_certificate(cert)
    out = cert.to_json()
    out["certificate_disk"] = thickness.certificate_disk(cert).to_json()
    return _json(out)


def _scan(args) -> str:
    report = thickness.thickness_scan(args.sample_level, args.query_level, parse_radii(args.radii),
                                      workers=args.workers, mode=args.mode)
    if args.format == "csv":
        return _csv(report.csv_rows())
    return _json(report.to_json())


def _witness(args) -> str:
    w = thickness.upper_bound_witness()
    return _json({
        "x": w.x.to_json(),
        "r": to_json_value(w.r),
        "inradius": to_json_value(w.inradius),
        "hull": w.hull.to_json(),
        "incircle": inscribed_disk(w.hull).to_json(),
    })


def _sumset(args) -> str:
    gasket.check_level(args.sample_level)
    spacing = parse_rational(args.spacing)
    cfg = sumset.SumsetConfig(args.n_terms, args.sample_level, spacing)
    pts = sumset.sumset_sample(cfg)
    if args.format == "svg":
        return render.render_sumset(pts if args.n_terms == 2 else ())
    if args.format == "csv":
        return _csv([["u", "w", "x", "y"]] + [
            [p.to_json()["u"], p.to_json()["w"], repr(p.xy()[0]), repr(p.xy()[1])] for p in pts])
    para = sumset.segment_sum((V1, V2), (V1, V3))
    disk = inscribed_disk(para)
    # evidence disk: half the inradius of n*Delta around its incenter
    n = args.n_terms
    probe = Point(Fraction(n, 3), Fraction(n, 3))
    cov = sumset.interior_coverage_check(pts, Disk(probe, QSqrt3(0, Fraction(n, 12))), spacing)
    return _json({
        "config": {"n_terms": n, "sample_level": args.sample_level,
                   "coverage_spacing": f"{spacing.numerator}/{spacing.denominator}"},
        "distinct_points": len(pts),
        "coverage": cov.to_json(),
        "parallelogram": {
            "vertices": [p.to_json() for p in para.vertices],
            "area": to_json_value(para.area()),
            "inscribed_disk": disk.to_json(),
        },
    })


def _bound(args) -> str:
    c = parse_number(args.c)
    res = sumset.kominers_min_summands(sumset.BoundQuery(args.d, c))
    return _json(res.to_json())


def _render(args) -> str:
    if args.subject == "stage":
        return render.render_stage(args.level)
    if args.subject == "sumset":
        return render.render_sumset()
    x, wit = parse_point(args.x, args.sample_level)
    return render.render_certificate(thickness.local_triangle(x, parse_radius(args.r), wit))


HANDLERS = {"stage": _stage, "certificate": _certificate, "scan": _scan, "witness": _witness,
            "sumset": _sumset, "bound": _bound, "render": _render}


def _validate(args) -> None:
    cap = gasket.level_cap()
    for name in ("level", "sample_level", "query_level"):
        value = getattr(args, name, None)
        if value is not None:
            gasket.check_level(value, cap)
    draws_stage = (args.subcommand == "stage" and args.format == "svg") or (
        args.subcommand == "render" and args.subject == "stage")
    if draws_stage and args.level > render.RENDER_CAP:
        raise gasket.LevelCapError(
            f"render cap exceeded: level {args.level} > {render.RENDER_CAP}; try a lower level")
    if getattr(args, "r", None) is not None:
        parse_radius(args.r)
    if getattr(args, "x", None) is not None and not args.x.lower().startswith("xy:"):
        parse_point(args.x)
    if getattr(args, "workers", 1) < 1:
        raise UsageError("--workers must be at least 1")
    if getattr(args, "n_terms", 1) < 1:
        raise UsageError("--n-terms must be at least 1")


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": message, "kind": kind, "exit_code": code}, sort_keys=True) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        if args.dry_run:
            sys.stdout.write(_json({"subcommand": args.subcommand, "valid": True}))
            return EXIT_OK
        text = HANDLERS[args.subcommand](args)
        if args.out:
            write_atomic(args.out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    except gasket.LevelCapError as exc:
        return _fail("resource", str(exc), EXIT_RESOURCE)
    except sumset.BudgetError as exc:
        return _fail("resource", str(exc), EXIT_RESOURCE)
    except thickness.CertificateError as exc:
        return _fail("invariant", str(exc), EXIT_INTERNAL)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        return _fail("usage", str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
