"""Deterministic SVG figures: stage sets, certificates and the two-segment sumset.

Output is plain text built from fixed templates; coordinates are printed with
six decimals so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math

from .gasket import LevelCapError, cell, stage
from .geom import M12, M13, M23, V1, V2, V3, Point
from .thickness import Certificate

RENDER_CAP = 8
WIDTH, HEIGHT = 1000, 900

PALETTE = {
    "background": "#ffffff",
    "outline": "#222222",
    "cell_fill": "#c9d6f2",
    "cell_stroke": "#2b4c9a",
    "ball": "#b22222",
    "certificate": "#1f5f1f",
    "incircle": "#d98c00",
    "sum_fill": "#d7efd7",
    "sum_stroke": "#1f5f1f",
    "segment_a": "#2b4c9a",
    "segment_b": "#b22222",
}


def _f(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


class _Canvas:
    def __init__(self, scale: float, ox: float, oy: float):
        self.scale, self.ox, self.oy = scale, ox, oy
        self.items: list[str] = []

    def px(self, p) -> tuple[str, str]:
        x, y = p.xy() if isinstance(p, Point) else p
        return _f(self.ox + self.scale * x), _f(self.oy - self.scale * y)

    def polygon(self, pts, cls: str, fill: str, stroke: str, width: float = 1.0):
        coords = " ".join(",".join(self.px(p)) for p in pts)
        self.items.append(
            f'<polygon class="{cls}" points="{coords}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_f(width)}"/>')

    def line(self, a, b, cls: str, stroke: str, width: float = 1.0):
        (x1, y1), (x2, y2) = self.px(a), self.px(b)
        self.items.append(
            f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" '
            f'stroke-width="{_f(width)}"/>')

    def circle(self, center, radius: float, cls: str, stroke: str, fill: str = "none",
               dashed: bool = False, width: float = 1.5):
        cx, cy = self.px(center)
        dash = ' stroke-dasharray="8,6"' if dashed else ""
        self.items.append(
            f'<circle class="{cls}" cx="{cx}" cy="{cy}" r="{_f(self.scale * radius)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{_f(width)}"{dash}/>')

    def label(self, p, text: str, dx: float = 0.0, dy: float = 0.0, color: str = "#222222"):
        x, y = self.px(p)
        self.items.append(
            f'<text class="label" x="{_f(float(x) + dx)}" y="{_f(float(y) + dy)}" '
            f'font-family="sans-serif" font-size="22" fill="{color}">{text}</text>')

    def document(self, title: str) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f"<title>{title}</title>\n"
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="{PALETTE["background"]}"/>\n'
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _unit_canvas() -> _Canvas:
    return _Canvas(900.0, 50.0, 450.0 + 900.0 * math.sqrt(3) / 4)


def render_stage(m: int, cap: int = RENDER_CAP) -> str:
    """All ``3**m`` surviving cells of stage ``m``, filled, over the unit triangle."""
    if m > cap:
        raise LevelCapError(f"render cap exceeded: level {m} > {cap}; try level {cap} or lower")
    cv = _unit_canvas()
    for c in stage(m).cells:
        cv.polygon(c.triangle.vertices, "cell", PALETTE["cell_fill"], PALETTE["cell_stroke"], 0.5)
    cv.polygon((V1, V2, V3), "outline", "none", PALETTE["outline"], 1.5)
    return cv.document(f"stage {m}")


def render_certificate(cert: Certificate) -> str:
    """Unit triangle, chosen cell, the ball ``B(x, r)``, the triangle Q and its incircle."""
    cv = _unit_canvas()
    cv.polygon((V1, V2, V3), "outline", "#f4f4f4", "#888888", 1.0)
    cv.polygon((M12, M23, M13), "hole", "#ffffff", "#bbbbbb", 0.75)
    cv.polygon(cell(cert.word).triangle.vertices, "cell", PALETTE["cell_fill"],
               PALETTE["cell_stroke"], 2.0)
    cv.circle(cert.x, float(cert.r), "ball", PALETTE["ball"], dashed=True)
    cv.polygon(cert.triangle.vertices, "certificate", "none", PALETTE["certificate"], 2.5)
    cv.circle(cert.incircle.center, float(cert.incircle.radius), "incircle", PALETTE["incircle"])
    cv.circle(cert.x, 0.006, "query", PALETTE["ball"], fill=PALETTE["ball"], width=0.5)
    cv.label(cert.x, "x", dx=8, dy=-8, color=PALETTE["ball"])
    cv.label(cell(cert.word).triangle.c, f"cell {cert.word or '(empty)'}", dx=8, dy=-8,
             color=PALETTE["cell_stroke"])
    return cv.document(f"certificate n={cert.n} word={cert.word or '-'} corner={cert.corner}")


def render_sumset(points=()) -> str:
    """The parallelogram ``[v1, v2] + [v1, v3]`` with its four labeled corners."""
    from .sumset import segment_sum

    cv = _Canvas(560.0, 60.0, 450.0 + 560.0 * math.sqrt(3) / 4)
    poly = segment_sum((V1, V2), (V1, V3))
    cv.polygon(poly.vertices, "sumset", PALETTE["sum_fill"], PALETTE["sum_stroke"], 1.5)
    cv.line(V1, V2, "segment", PALETTE["segment_a"], 3.0)
    cv.line(V1, V3, "segment", PALETTE["segment_b"], 3.0)
    for p in points:
        cv.circle(p, 0.003, "sample", PALETTE["outline"], fill=PALETTE["outline"], width=0.2)
    labels = {V1 + V1: ("2v1", -40, 28), V1 + V2: ("v1+v2", 8, 28),
              V1 + V3: ("v1+v3", -70, -10), V2 + V3: ("v2+v3", 8, -10)}
    for p in poly.vertices:
        text, dx, dy = labels[p]
        cv.circle(p, 0.008, "corner", PALETTE["outline"], fill=PALETTE["outline"], width=0.5)
        cv.label(p, text, dx=dx, dy=dy)
    return cv.document("[v1,v2] + [v1,v3]")
