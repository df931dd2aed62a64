"""Exact model of the Sierpinski gasket iterated function system.

The three corner maps are ``phi_i(p) = (p + v_i) / 2``.  A word ``w`` is a
string over ``"123"``; ``phi_w`` applies the rightmost letter first, so
``phi_w(p) = phi_w(0) + p / 2**len(w)`` and the cell ``Delta_w = phi_w(Delta)``
has its lower-left corner at ``phi_w(0)``.  Inside this module a level-``k``
cell is addressed by the integer pair ``O`` with ``phi_w(0) = O / 2**k``,
which keeps every descent step in integer arithmetic.

Membership in the gasket ``E`` is only ever asserted constructively: every
point on a side of any cell lies in ``E``, so a (word, side, parameter)
triple is a witness.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .exact import QSqrt3, as_fraction, format_rational, parse_rational
from .geom import V1, V2, V3, VERTICES, GeometryError, Point, Triangle, polygon_area

DEFAULT_LEVEL_CAP = 12
ALPHABET = "123"

# unit offsets of the child cells, in basis coordinates
_CHILD_OFFSET = {"1": (0, 0), "2": (1, 0), "3": (0, 1)}

# side k runs from VERTICES[a] to VERTICES[b]
SIDES = {1: (0, 1), 2: (1, 2), 3: (2, 0)}


class LevelCapError(ValueError):
    """A requested level exceeds the configured enumeration cap."""


class WitnessError(ValueError):
    """A point has no (or an invalid) constructive membership witness."""


def level_cap() -> int:
    """Enumeration cap; ``GASKET_LEVEL_CAP`` overrides the default of 12."""
    raw = os.environ.get("GASKET_LEVEL_CAP")
    if raw is None:
        return DEFAULT_LEVEL_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"GASKET_LEVEL_CAP must be an integer, got {raw!r}") from exc
    if cap < 0:
        raise ValueError("GASKET_LEVEL_CAP must be nonnegative")
    return cap


def check_level(m: int, cap: int | None = None) -> int:
    cap = level_cap() if cap is None else cap
    if m < 0:
        raise ValueError(f"level must be nonnegative, got {m}")
    if m > cap:
        raise LevelCapError(f"level cap exceeded: {m} > {cap}")
    return m


def check_word(w: str) -> str:
    if not isinstance(w, str) or any(ch not in ALPHABET for ch in w):
        raise ValueError(f"word must be a string over {{1,2,3}}, got {w!r}")
    return w


def words(n: int) -> Iterator[str]:
    """All words of length ``n`` in lexicographic order."""
    return ("".join(t) for t in itertools.product(ALPHABET, repeat=n))


def apply_map(i: int, p: Point) -> Point:
    if i not in (1, 2, 3):
        raise ValueError(f"map index must be 1, 2 or 3, got {i}")
    return (p + VERTICES[i - 1]) / 2


def apply_word(w: str, p: Point) -> Point:
    for ch in reversed(check_word(w)):
        p = apply_map(int(ch), p)
    return p


def inverse_word(w: str, p: Point) -> Point:
    """``phi_w^{-1}(p)``."""
    for ch in check_word(w):
        p = p * 2 - VERTICES[int(ch) - 1]
    return p


def _origin_ints(w: str) -> tuple[int, int]:
    ou = ow = 0
    for ch in w:
        du, dw = _CHILD_OFFSET[ch]
        ou, ow = 2 * ou + du, 2 * ow + dw
    return ou, ow


def word_origin(w: str) -> Point:
    """``phi_w(v1)``, the lower-left corner of the cell."""
    ou, ow = _origin_ints(check_word(w))
    scale = 2 ** len(w)
    return Point(Fraction(ou, scale), Fraction(ow, scale))


@dataclass(frozen=True)
class Cell:
    word: str

    @property
    def level(self) -> int:
        return len(self.word)

    @property
    def side(self) -> Fraction:
        return Fraction(1, 2 ** len(self.word))

    @property
    def origin(self) -> Point:
        return word_origin(self.word)

    @property
    def triangle(self) -> Triangle:
        o, s = self.origin, self.side
        return Triangle(o, o + Point(s, 0), o + Point(0, s))

    def area(self) -> QSqrt3:
        return polygon_area(self.triangle.vertices)

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "side": format_rational(self.side),
            "triangle": self.triangle.to_json(),
        }


def cell(w: str) -> Cell:
    return Cell(check_word(w))


@dataclass(frozen=True)
class StageSet:
    level: int
    cells: tuple[Cell, ...]

    def __len__(self):
        return len(self.cells)

    def area(self) -> QSqrt3:
        """Sum of the enumerated cell areas."""
        total = QSqrt3()
        for c in self.cells:
            total = total + c.area()
        return total

    def to_json(self) -> dict:
        return {"level": self.level, "count": len(self.cells),
                "cells": [c.to_json() for c in self.cells]}


def stage(m: int, cap: int | None = None) -> StageSet:
    """The ``3**m`` level-``m`` cells in lexicographic word order."""
    check_level(m, cap)
    return StageSet(m, tuple(Cell(w) for w in words(m)))


def stage_area(m: int) -> QSqrt3:
    """``(3/4)**m`` times the area ``sqrt(3)/4`` of the unit triangle."""
    if m < 0:
        raise ValueError("level must be nonnegative")
    return QSqrt3(0, Fraction(3, 4) ** m / 4)


@dataclass(frozen=True)
class MembershipWitness:
    """The point ``phi_word((1 - t) * v_a + t * v_b)`` on side ``side_index``.

    Every such point lies on a side of a construction cell and is therefore
    in the gasket.  ``t`` is an exact rational in ``[0, 1]``.
    """

    kind: str
    word: str
    side_index: int
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", as_fraction(self.t))
        if self.kind not in ("cell_vertex", "dyadic_side_point"):
            raise WitnessError(f"unknown witness kind {self.kind!r}")

    @classmethod
    def on_side(cls, word: str, side_index: int, t) -> "MembershipWitness":
        t = as_fraction(t)
        kind = "cell_vertex" if t in (0, 1) else "dyadic_side_point"
        return cls(kind, word, side_index, t)

    def point(self) -> Point:
        a, b = SIDES[self.side_index]
        local = VERTICES[a] * (1 - self.t) + VERTICES[b] * self.t
        return apply_word(self.word, local)

    def validate(self, p: Point | None = None) -> None:
        """Raise :class:`WitnessError` unless the witness is well formed
        (and, if given, names ``p``)."""
        check_word(self.word)
        if self.side_index not in SIDES:
            raise WitnessError(f"side index {self.side_index} not in 1..3")
        if not 0 <= self.t <= 1:
            raise WitnessError(f"side parameter {self.t} outside [0, 1]")
        if (self.t in (0, 1)) != (self.kind == "cell_vertex"):
            raise WitnessError("witness kind does not match its parameter")
        if p is not None and self.point() != p:
            raise WitnessError(f"witness names {self.point()!r}, not {p!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "word": self.word, "side_index": self.side_index,
                "t": format_rational(self.t)}

    @classmethod
    def from_json(cls, obj: dict) -> "MembershipWitness":
        return cls(obj["kind"], obj["word"], int(obj["side_index"]), parse_rational(obj["t"]))


def side_dyadics(w: str, side_index: int, n: int) -> list[tuple[Point, MembershipWitness]]:
    """The ``2**n + 1`` points at parameters ``k / 2**n`` along a side of a cell."""
    check_word(w)
    if side_index not in SIDES:
        raise ValueError(f"side index must be 1, 2 or 3, got {side_index}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for k in range(2 ** n + 1):
        wit = MembershipWitness.on_side(w, side_index, Fraction(k, 2 ** n))
        out.append((wit.point(), wit))
    return out


@functools.lru_cache(maxsize=16)
def _origins(n: int) -> np.ndarray:
    """Integer origins ``2**n * phi_w(0)`` of all level-``n`` cells, lexicographic."""
    o = np.zeros((1, 2), dtype=np.int64)
    offsets = np.array([_CHILD_OFFSET[ch] for ch in ALPHABET], dtype=np.int64)
    for _ in range(n):
        o = (2 * o[:, None, :] + offsets[None, :, :]).reshape(-1, 2)
    o.setflags(write=False)
    return o


def cell_origins(n: int) -> np.ndarray:
    """Read-only ``(3**n, 2)`` array of integer cell origins at scale ``2**n``."""
    check_level(n)
    return _origins(n)


@functools.lru_cache(maxsize=16)
def _vertex_array(n: int) -> np.ndarray:
    o = _origins(n)
    verts = np.concatenate([o, o + [1, 0], o + [0, 1]])
    out = np.unique(verts, axis=0)
    out.setflags(write=False)
    return out


def vertex_sample_array(n: int) -> np.ndarray:
    """Distinct level-``n`` cell vertices as integers at scale ``2**n``, sorted."""
    check_level(n)
    return _vertex_array(n)


def vertex_sample(n: int) -> list[Point]:
    """Distinct vertices of all level-``n`` cells, ``3 * (3**n + 1) / 2`` points."""
    scale = 2 ** n
    return [Point(Fraction(int(u), scale), Fraction(int(w), scale))
            for u, w in vertex_sample_array(n)]


def _scaled(p: Point) -> tuple[int, int, int]:
    u, w = as_fraction(p.u), as_fraction(p.w)
    d = math.lcm(u.denominator, w.denominator)
    return u.numerator * (d // u.denominator), w.numerator * (d // w.denominator), d


def _local(U: int, W: int, D: int, k: int, ou: int, ow: int) -> tuple[int, int]:
    """Local basis coordinates of the point in a level-``k`` cell, times ``D``."""
    return U * 2 ** k - ou * D, W * 2 ** k - ow * D


@functools.lru_cache(maxsize=8192)
def _descend(U: int, W: int, D: int, n: int) -> tuple[tuple[str, int, int], ...]:
    if n == 0:
        return (("", 0, 0),) if U >= 0 and W >= 0 and U + W <= D else ()
    out = []
    for word, ou, ow in _descend(U, W, D, n - 1):
        for ch in ALPHABET:
            du, dw = _CHILD_OFFSET[ch]
            cu, cw = 2 * ou + du, 2 * ow + dw
            a, b = _local(U, W, D, n, cu, cw)
            if a >= 0 and b >= 0 and a + b <= D:
                out.append((word + ch, cu, cw))
    return tuple(out)


def locate_cells(x: Point, n: int) -> list[str]:
    """All words ``w`` of length ``n`` with ``x`` in the closed cell ``Delta_w``.

    Sorted lexicographically; empty iff ``x`` is not in the stage set ``K_n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    U, W, D = _scaled(x)
    if not (U >= 0 and W >= 0 and U + W <= D):
        raise GeometryError("point outside the unit triangle")
    return sorted(word for word, _, _ in _descend(U, W, D, n))


def in_stage(p: Point, m: int) -> bool:
    U, W, D = _scaled(p)
    if not (U >= 0 and W >= 0 and U + W <= D):
        return False
    return bool(_descend(U, W, D, m))


def _boundary_witness(U, W, D, k, word, ou, ow) -> MembershipWitness | None:
    a, b = _local(U, W, D, k, ou, ow)
    if b == 0:
        return MembershipWitness.on_side(word, 1, Fraction(a, D))
    if a + b == D:
        return MembershipWitness.on_side(word, 2, Fraction(b, D))
    if a == 0:
        return MembershipWitness.on_side(word, 3, 1 - Fraction(b, D))
    return None


def find_witness(p: Point, max_level: int | None = None) -> MembershipWitness | None:
    """Search cells down to ``max_level`` for one whose side carries ``p``.

    Returns the witness on the lexicographically smallest word at the
    shallowest level, or None when ``p`` falls in a hole or lies on no cell
    side up to the search depth.
    """
    max_level = level_cap() if max_level is None else max_level
    U, W, D = _scaled(p)
    if not (U >= 0 and W >= 0 and U + W <= D):
        return None
    for k in range(max_level + 1):
        hits = _descend(U, W, D, k)
        if not hits:
            return None
        for word, ou, ow in sorted(hits):
            wit = _boundary_witness(U, W, D, k, word, ou, ow)
            if wit is not None:
                return wit
    return None


def side_witness(word: str, p: Point) -> MembershipWitness:
    """Witness placing ``p`` on a side of the given cell, or raise."""
    U, W, D = _scaled(p)
    ou, ow = _origin_ints(check_word(word))
    wit = _boundary_witness(U, W, D, len(word), word, ou, ow)
    a, b = _local(U, W, D, len(word), ou, ow)
    if wit is None or a < 0 or b < 0 or a + b > D:
        raise WitnessError(f"{p!r} is not on a side of cell {word!r}")
    return wit


def snap_to_gasket(x: float, y: float, level: int = 10) -> tuple[Point, MembershipWitness]:
    """Nearest level-``level`` cell vertex to the Cartesian point ``(x, y)``."""
    arr = vertex_sample_array(level).astype(float) / 2 ** level
    cx = arr[:, 0] + arr[:, 1] / 2
    cy = arr[:, 1] * math.sqrt(3) / 2
    k = int(np.argmin((cx - x) ** 2 + (cy - y) ** 2))
    u, w = vertex_sample_array(level)[k]
    p = Point(Fraction(int(u), 2 ** level), Fraction(int(w), 2 ** level))
    wit = find_witness(p, level)
    assert wit is not None
    return p, wit


__all__ = [
    "ALPHABET", "Cell", "DEFAULT_LEVEL_CAP", "LevelCapError", "MembershipWitness", "SIDES",
    "StageSet", "V1", "V2", "V3", "WitnessError", "apply_map", "apply_word", "cell",
    "cell_origins", "check_level", "check_word", "find_witness", "in_stage", "inverse_word",
    "level_cap", "locate_cells", "side_dyadics", "side_witness", "snap_to_gasket", "stage",
    "stage_area", "vertex_sample", "vertex_sample_array", "word_origin", "words",
]
