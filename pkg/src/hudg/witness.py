"""Exact certificate checks for unit disk graph realizations.

A realization is accepted when the largest separation over edges is strictly
below the smallest separation over non-edges. In the hyperboloid model the
separations are compared as bilinear-form values, which avoids evaluating any
transcendental function: ``arccosh`` is monotone, so the outcome is the same.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypgeo import arccosh, check_on_sheet, pairwise_forms
from .reduction import LabeledGraph

GEOMETRIES = ("euclidean", "hyperboloid")


class InfeasibleIntervalError(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdInterval:
    """Separations ``lo`` (max over edges) and ``hi`` (min over non-edges).

    ``space`` is ``"distance"`` or ``"form"`` (bilinear-form values).
    """

    lo: float
    hi: float
    space: str

    @property
    def feasible(self) -> bool:
        return self.lo < self.hi

    def contains(self, t: float) -> bool:
        """Whether the distance threshold ``t`` lies in ``[lo, hi)`` with edges as ``d <= t``."""
        v = np.cosh(t) if self.space == "form" else t
        return bool(self.lo <= v < self.hi)

    def strictly_contains(self, t: float) -> bool:
        v = np.cosh(t) if self.space == "form" else t
        return bool(self.lo < v < self.hi)

    def to_distance(self) -> "ThresholdInterval":
        if self.space == "distance":
            return self
        return ThresholdInterval(arccosh(self.lo), float(arccosh(self.hi)) if np.isfinite(self.hi) else np.inf, "distance")

    @property
    def width(self) -> float:
        """Width in distance space."""
        d = self.to_distance()
        return d.hi - d.lo


@dataclass(frozen=True)
class Realization:
    """Vertex positions plus an optional distance threshold.

    ``points`` has shape ``(n, 2)`` for ``euclidean`` and ``(n, 3)`` hyperboloid
    coordinates for ``hyperboloid``.
    """

    geometry: str
    points: np.ndarray
    threshold: float | None = None

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"unknown geometry {self.geometry!r}; expected one of {GEOMETRIES}")
        dim = 2 if self.geometry == "euclidean" else 3
        pts = np.array(self.points, dtype=float).reshape(-1, dim)
        if self.geometry == "hyperboloid" and len(pts):
            check_on_sheet(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def _split(g: LabeledGraph, sep: np.ndarray, n_points: int):
    if n_points != g.n_vertices:
        raise ValueError(f"graph has {g.n_vertices} vertices but {n_points} points were given")
    adj = g.adjacency()
    iu = np.triu_indices(g.n_vertices, 1)
    s = sep[iu]
    e = adj[iu]
    return s[e], s[~e]


def verify_hudg(g: LabeledGraph, points) -> ThresholdInterval:
    """Check a hyperboloid realization; returns the interval in form space.

    The interval is feasible (``lo < hi``) exactly when the points realize ``g``
    as a hyperbolic unit disk graph for some threshold. Uses ``O(|V|^2)``
    bilinear-form evaluations.
    """
    pts = check_on_sheet(np.asarray(points, dtype=float).reshape(-1, 3))
    forms = pairwise_forms(pts)
    on_edges, off_edges = _split(g, forms, len(pts))
    lo = max(1.0, float(on_edges.max())) if on_edges.size else 1.0
    hi = float(off_edges.min()) if off_edges.size else np.inf
    return ThresholdInterval(lo, hi, "form")


def verify_udg(g: LabeledGraph, points) -> ThresholdInterval:
    """Check a Euclidean realization; returns the interval in distance space."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    on_edges, off_edges = _split(g, dist, len(pts))
    lo = float(on_edges.max()) if on_edges.size else 0.0
    hi = float(off_edges.min()) if off_edges.size else np.inf
    return ThresholdInterval(lo, hi, "distance")


def verify(g: LabeledGraph, realization: Realization) -> ThresholdInterval:
    if realization.geometry == "euclidean":
        return verify_udg(g, realization.points)
    return verify_hudg(g, realization.points)


def interval_to_radius(iv: ThresholdInterval) -> float:
    """Pick a distance threshold strictly inside a feasible interval.

    Form space uses the geometric mean of the endpoints, distance space the
    arithmetic mean; an unbounded interval doubles the lower end.
    """
    if not iv.feasible:
        raise InfeasibleIntervalError(f"interval [{iv.lo}, {iv.hi}) is empty")
    if iv.space == "form":
        target = 2.0 * iv.lo if not np.isfinite(iv.hi) else float(np.sqrt(iv.lo * iv.hi))
        return float(arccosh(target))
    if not np.isfinite(iv.hi):
        return 2.0 * iv.lo if iv.lo > 0 else 1.0
    return (iv.lo + iv.hi) / 2.0


def adjacency_at(points, threshold: float, geometry: str) -> np.ndarray:
    """Adjacency matrix induced by ``separation <= threshold``."""
    if geometry == "euclidean":
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        diff = pts[:, None, :] - pts[None, :, :]
        sep = np.hypot(diff[..., 0], diff[..., 1])
        adj = sep <= threshold
    else:
        forms = pairwise_forms(points)
        adj = forms <= np.cosh(threshold)
    np.fill_diagonal(adj, False)
    return adj
