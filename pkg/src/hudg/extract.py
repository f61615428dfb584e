"""Recover a hyperbolic line arrangement from a realization of a gadget graph.

For each pair ``(a_i, b_i)`` the perpendicular bisector ``{p : d(p, a_i) = d(p, b_i)}``
is the plane ``B(p, a_i - b_i) = 0`` cut with the hyperboloid. The cell vertex
``c_j`` then lies on the ``a_i`` side exactly when it is adjacent to ``a_i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrangement import CombinatorialDescription, DegenerateArrangementError, OrientedLine
from .hypgeo import check_on_sheet, hyp_distance, minkowski_b
from .reduction import LabeledGraph

DEGENERACY_GAP = 1e-7
ZERO_BAND = 1e-9


@dataclass(frozen=True)
class BisectorLine:
    """Hyperbolic line ``{p : B(p, w) = 0}``; the negative side contains ``a``."""

    w: tuple[float, float, float]

    def __post_init__(self):
        w = tuple(float(c) for c in self.w)
        if not any(w):
            raise DegenerateArrangementError("bisector normal must be nonzero")
        object.__setattr__(self, "w", w)

    def klein_line(self) -> OrientedLine:
        """The same line as a chord-supporting line of the Klein disk, same orientation."""
        wx, wy, wz = self.w
        return OrientedLine(-wx, -wy, wz)


def bisector(a, b) -> BisectorLine:
    a = check_on_sheet(a)
    b = check_on_sheet(b)
    if hyp_distance(a, b) <= DEGENERACY_GAP:
        raise DegenerateArrangementError("bisector of (nearly) coincident points is undefined")
    return BisectorLine(tuple(a - b))


def side_of(line: BisectorLine, p, zero_band: float = ZERO_BAND) -> int:
    """-1 if ``p`` is closer to ``a``, +1 if closer to ``b``, 0 on the bisector."""
    v = minkowski_b(check_on_sheet(p), np.asarray(line.w))
    if v < -zero_band:
        return -1
    if v > zero_band:
        return 1
    return 0


def extract_lines(g: LabeledGraph, points) -> list[BisectorLine]:
    pts = check_on_sheet(np.asarray(points, dtype=float).reshape(-1, 3))
    a, b, _ = g.gadget_parts()
    return [bisector(pts[ai], pts[bi]) for ai, bi in zip(a, b)]


def extract_description(g: LabeledGraph, points) -> CombinatorialDescription:
    """Sign vectors of the cell vertices against the ``a_i``/``b_i`` bisectors."""
    pts = check_on_sheet(np.asarray(points, dtype=float).reshape(-1, 3))
    if len(pts) != g.n_vertices:
        raise ValueError(f"graph has {g.n_vertices} vertices but {len(pts)} points were given")
    lines = extract_lines(g, pts)
    _, _, c = g.gadget_parts()
    cells = set()
    for cj in c:
        vec = tuple(side_of(ln, pts[cj]) for ln in lines)
        if 0 in vec:
            raise DegenerateArrangementError(f"vertex {g.labels[cj]} lies on a bisector")
        cells.add(vec)
    return CombinatorialDescription(len(lines), frozenset(cells))
