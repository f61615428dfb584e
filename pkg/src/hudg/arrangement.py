"""Oriented line arrangements, sign vectors and cell enumeration.

Sign vectors are tuples over ``{-1, 0, 1}``. A combinatorial description keeps
only the zero-free vectors, one per cell; for simple arrangements these
determine the rest of the face lattice.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

ZERO_BAND = 1e-9
PARALLEL_TOL = 1e-9
VERTEX_TOL = 1e-7
MARGIN_FACTOR = 1.25
MAX_RETRIES = 1000
CHORD_TOL = 1e-9

SignVector = tuple[int, ...]


class DegenerateArrangementError(ValueError):
    """The arrangement is not simple, or a derived object is degenerate."""


@dataclass(frozen=True)
class OrientedLine:
    """The line ``a x + b y + c = 0``; its positive side is where the form is > 0.

    Coefficients are normalized on construction so that ``a^2 + b^2 = 1``.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        norm = float(np.hypot(self.a, self.b))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("line normal (a, b) must be nonzero and finite")
        object.__setattr__(self, "a", float(self.a) / norm)
        object.__setattr__(self, "b", float(self.b) / norm)
        object.__setattr__(self, "c", float(self.c) / norm)

    @classmethod
    def through(cls, p, q) -> "OrientedLine":
        """Line through ``p`` and ``q``; the positive side is left of ``p -> q``."""
        (px, py), (qx, qy) = p, q
        dx, dy = qx - px, qy - py
        return cls(-dy, dx, dy * px - dx * py)

    @property
    def normal(self) -> np.ndarray:
        return np.array([self.a, self.b])

    @property
    def direction(self) -> np.ndarray:
        return np.array([self.b, -self.a])

    def evaluate(self, p) -> np.ndarray | float:
        p = np.asarray(p, dtype=float)
        out = self.a * p[..., 0] + self.b * p[..., 1] + self.c
        return float(out) if np.ndim(out) == 0 else out

    def flipped(self) -> "OrientedLine":
        return OrientedLine(-self.a, -self.b, -self.c)


@dataclass(frozen=True)
class CombinatorialDescription:
    """Cell sign vectors of an arrangement of ``n`` lines.

    ``representatives`` optionally maps each cell to a point inside it; it is
    excluded from equality so descriptions compare as plain sets.
    """

    n: int
    cells: frozenset
    representatives: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        cells = frozenset(tuple(int(s) for s in v) for v in self.cells)
        object.__setattr__(self, "cells", cells)
        for v in cells:
            if len(v) != self.n:
                raise ValueError(f"sign vector {format_sign_vector(v)} has length {len(v)}, expected {self.n}")
            if any(s not in (-1, 1) for s in v):
                raise ValueError(f"cell sign vector {format_sign_vector(v)} must be zero-free")

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def is_simple(self) -> bool:
        return self.m == simple_cell_count(self.n)

    def sorted_cells(self) -> list[SignVector]:
        return sorted(self.cells)


@dataclass(frozen=True)
class Chord:
    """Oriented chord of the unit disk; the positive side is left of ``p -> q``."""

    p: tuple[float, float]
    q: tuple[float, float]

    def __post_init__(self):
        for pt in (self.p, self.q):
            if abs(np.hypot(*pt) - 1.0) > CHORD_TOL:
                raise ValueError(f"chord endpoint {pt} is not on the unit circle")
        if np.allclose(self.p, self.q, atol=CHORD_TOL):
            raise ValueError("chord endpoints coincide")

    def supporting_line(self) -> OrientedLine:
        return OrientedLine.through(self.p, self.q)


@dataclass(frozen=True)
class ChordArrangement:
    chords: tuple[Chord, ...]

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(self.chords))
        keys = [(round(c.p[0], 9), round(c.p[1], 9), round(c.q[0], 9), round(c.q[1], 9)) for c in self.chords]
        if len(set(keys)) != len(keys):
            raise ValueError("chords must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.chords)


def simple_cell_count(n: int) -> int:
    return 1 + n * (n + 1) // 2


def format_sign_vector(v: Iterable[int]) -> str:
    return "".join({-1: "-", 0: "0", 1: "+"}[int(s)] for s in v)


def parse_sign_vector(s: str) -> SignVector:
    table = {"-": -1, "0": 0, "+": 1}
    try:
        return tuple(table[ch] for ch in s)
    except KeyError:
        raise ValueError(f"invalid sign vector {s!r}; use only '-', '0', '+'") from None


def _coefficients(lines: Sequence[OrientedLine]) -> np.ndarray:
    return np.array([[ln.a, ln.b, ln.c] for ln in lines], dtype=float).reshape(-1, 3)


def sign_vector(lines: Sequence[OrientedLine], p, zero_band: float = ZERO_BAND) -> SignVector:
    if not lines:
        raise ValueError("need at least one line")
    values = _coefficients(lines) @ np.array([p[0], p[1], 1.0], dtype=float)
    signs = np.where(np.abs(values) <= zero_band, 0, np.sign(values))
    return tuple(int(s) for s in signs)


def sign_matrix(lines: Sequence[OrientedLine], points, zero_band: float = ZERO_BAND) -> np.ndarray:
    """Sign vectors of many points at once, shape ``(len(points), len(lines))``."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    values = pts @ _coefficients(lines)[:, :2].T + _coefficients(lines)[:, 2]
    return np.where(np.abs(values) <= zero_band, 0, np.sign(values)).astype(int)


def intersection(l1: OrientedLine, l2: OrientedLine) -> np.ndarray | None:
    det = l1.a * l2.b - l1.b * l2.a
    if abs(det) <= PARALLEL_TOL:
        return None
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return np.array([x, y])


def _vertices(lines: Sequence[OrientedLine]):
    """All pairwise intersections as ``((i, j), point)``, or None if any pair is parallel."""
    out = []
    for i, j in itertools.combinations(range(len(lines)), 2):
        p = intersection(lines[i], lines[j])
        if p is None:
            return None
        out.append(((i, j), p))
    return out


def _min_gap(points: np.ndarray) -> float:
    if len(points) < 2:
        return np.inf
    diff = points[:, None, :] - points[None, :, :]
    d = np.hypot(diff[..., 0], diff[..., 1])
    return float(d[np.triu_indices(len(points), 1)].min())


def _scale(points: np.ndarray) -> float:
    if len(points) < 2:
        return 1.0
    diff = points[:, None, :] - points[None, :, :]
    return max(1.0, float(np.hypot(diff[..., 0], diff[..., 1]).max()))


def is_simple(lines: Sequence[OrientedLine]) -> bool:
    """No parallel pair and no three lines through a common point."""
    if len(lines) < 2:
        return True
    verts = _vertices(lines)
    if verts is None:
        return False
    pts = np.array([p for _, p in verts])
    return _min_gap(pts) > VERTEX_TOL * _scale(pts)


def enumerate_cells(lines: Sequence[OrientedLine]) -> CombinatorialDescription:
    """Sign vectors of all cells of a simple arrangement, with a witness point per cell.

    Every cell of a simple arrangement with ``n >= 2`` lines has a vertex on its
    boundary, so stepping off each vertex into its four quadrants reaches every
    cell. Points on a large circle are added as a second net for unbounded
    cells. The result is checked against the cell-count law.
    """
    lines = list(lines)
    n = len(lines)
    if n == 0:
        raise ValueError("need at least one line")
    if not is_simple(lines):
        raise DegenerateArrangementError("arrangement is not simple")

    candidates = []
    if n == 1:
        foot = -lines[0].c * lines[0].normal
        candidates += [foot + lines[0].normal, foot - lines[0].normal]
    else:
        verts = _vertices(lines)
        pts = np.array([p for _, p in verts])
        coef = _coefficients(lines)
        gap = _min_gap(pts)
        gap = _scale(pts) if not np.isfinite(gap) else gap
        for (i, j), p in verts:
            # stay closer to the vertex than any other line
            dist = np.abs(coef[:, :2] @ p + coef[:, 2])
            dist[[i, j]] = np.inf
            eps = min(gap / 4, float(dist.min()) / 4) if n > 2 else gap / 4
            if not np.isfinite(eps):
                eps = 1.0
            di, dj = lines[i].direction, lines[j].direction
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                candidates.append(p + eps * (si * di + sj * dj))
        center = pts.mean(axis=0)
        radius = 2 * max(1.0, float(np.hypot(*(pts - center).T).max()))
        ang = np.linspace(0, 2 * np.pi, 4 * n, endpoint=False)
        candidates += list(center + radius * np.stack([np.cos(ang), np.sin(ang)], axis=1))

    cand = np.array(candidates)
    signs = sign_matrix(lines, cand)
    reps: dict = {}
    for vec, pt in zip(map(tuple, signs), cand):
        if 0 not in vec and vec not in reps:
            reps[tuple(int(s) for s in vec)] = (float(pt[0]), float(pt[1]))

    expected = simple_cell_count(n)
    if len(reps) != expected:
        raise DegenerateArrangementError(f"found {len(reps)} cells, expected {expected} for {n} lines")
    return CombinatorialDescription(n, frozenset(reps), representatives=reps)


def random_simple_arrangement(n: int, seed=None, max_retries: int = MAX_RETRIES) -> list[OrientedLine]:
    """Random simple arrangement of ``n`` lines crossing near the origin, oriented at random."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        theta = rng.uniform(0, np.pi, n)
        offset = rng.uniform(-1, 1, n)
        flip = rng.choice([-1.0, 1.0], n)
        lines = [OrientedLine(f * np.cos(t), f * np.sin(t), f * c) for t, c, f in zip(theta, offset, flip)]
        if not is_simple(lines):
            continue
        if n >= 2:
            verts = np.array([p for _, p in _vertices(lines)])
            if _min_gap(verts) < 1e-3 * _scale(verts):
                continue
        return lines
    raise DegenerateArrangementError(f"no simple arrangement found after {max_retries} attempts")


def smallest_enclosing_circle(points) -> tuple[np.ndarray, float]:
    """Minimum enclosing circle (Welzl's algorithm, iterative form)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return np.zeros(2), 0.0
    pts = pts[np.random.default_rng(0).permutation(len(pts))]

    def inside(c, r, p):
        return np.hypot(*(p - c)) <= r * (1 + 1e-12) + 1e-12

    def two(a, b):
        c = (a + b) / 2
        return c, float(np.hypot(*(a - c)))

    def three(a, b, c):
        d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(d) < 1e-15:
            # collinear: the farthest pair spans the circle
            return max((two(a, b), two(a, c), two(b, c)), key=lambda t: t[1])
        sa, sb, sc = a @ a, b @ b, c @ c
        ux = (sa * (b[1] - c[1]) + sb * (c[1] - a[1]) + sc * (a[1] - b[1])) / d
        uy = (sa * (c[0] - b[0]) + sb * (a[0] - c[0]) + sc * (b[0] - a[0])) / d
        ctr = np.array([ux, uy])
        return ctr, float(np.hypot(*(a - ctr)))

    c, r = pts[0].copy(), 0.0
    for i in range(1, len(pts)):
        if inside(c, r, pts[i]):
            continue
        c, r = pts[i].copy(), 0.0
        for j in range(i):
            if inside(c, r, pts[j]):
                continue
            c, r = two(pts[i], pts[j])
            for k in range(j):
                if not inside(c, r, pts[k]):
                    c, r = three(pts[i], pts[j], pts[k])
    return c, r


def _chord_of(line: OrientedLine) -> Chord:
    if abs(line.c) >= 1.0:
        raise DegenerateArrangementError("line misses the unit disk")
    foot = -line.c * line.normal
    half = np.sqrt(1.0 - line.c**2)
    p = foot - half * line.direction
    q = foot + half * line.direction
    # re-project so endpoints sit on the circle to machine precision
    p, q = p / np.hypot(*p), q / np.hypot(*q)
    return Chord((float(p[0]), float(p[1])), (float(q[0]), float(q[1])))


def euclidean_to_chords(lines: Sequence[OrientedLine], margin_factor: float = MARGIN_FACTOR) -> ChordArrangement:
    """Clip a simple arrangement to a disk enclosing all crossings, rescaled to the unit disk.

    The result, read in the Beltrami-Klein model, is a hyperbolic line
    arrangement with the same combinatorial description.
    """
    lines = list(lines)
    if not is_simple(lines):
        raise DegenerateArrangementError("arrangement is not simple")
    if len(lines) >= 2:
        verts = np.array([p for _, p in _vertices(lines)])
        center, radius = smallest_enclosing_circle(verts)
        radius = radius * margin_factor
        if radius <= 0:
            radius = 1.0
    else:
        center, radius = np.zeros(2), 1.0
        if abs(lines[0].c) >= 1.0:
            center = -lines[0].c * lines[0].normal
    chords = []
    for ln in lines:
        shifted = OrientedLine(ln.a * radius, ln.b * radius, ln.a * center[0] + ln.b * center[1] + ln.c)
        chords.append(_chord_of(shifted))
    return ChordArrangement(tuple(chords))


def chords_to_euclidean(chords: ChordArrangement) -> list[OrientedLine]:
    """Extend chords to full lines, keeping orientation.

    Every pair of chords must cross strictly inside the disk; otherwise the
    hyperbolic arrangement was not simple and the extension could add crossings.
    """
    lines = [c.supporting_line() for c in chords.chords]
    for (i, li), (j, lj) in itertools.combinations(enumerate(lines), 2):
        p = intersection(li, lj)
        if p is None or np.hypot(*p) >= 1.0:
            raise DegenerateArrangementError(f"chords {i} and {j} do not cross inside the disk")
    return lines


def klein_sign_vector(chords: ChordArrangement, k, zero_band: float = ZERO_BAND) -> SignVector:
    """Sign vector of a Klein-disk point against chords read as hyperbolic lines.

    Each chord ``a x + b y + c = 0`` is the trace of the plane
    ``a X + b Y + c Z = 0`` on the hyperboloid, so the sign is evaluated there.
    """
    from .hypgeo import klein_to_hyperboloid

    h = klein_to_hyperboloid(k)
    lines = [c.supporting_line() for c in chords.chords]
    vals = [ln.a * h[0] + ln.b * h[1] + ln.c * h[2] for ln in lines]
    return tuple(0 if abs(v) <= zero_band else (1 if v > 0 else -1) for v in vals)
