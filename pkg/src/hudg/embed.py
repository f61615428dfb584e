"""Carry a Euclidean unit disk realization into the hyperbolic plane.

Euclidean polar coordinates about the centroid are shrunk by a factor ``s``
and read as hyperbolic polar coordinates. For small ``s`` the two geometries
agree closely enough that every adjacency survives; ``s`` is found by halving
and each candidate is re-verified exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypgeo import polar_to_hyperboloid
from .reduction import LabeledGraph
from .witness import Realization, ThresholdInterval, adjacency_at, verify_hudg, verify_udg

MAX_HALVINGS = 64


class EmbeddingError(RuntimeError):
    pass


@dataclass(frozen=True)
class EmbedResult:
    realization: Realization
    scale: float
    interval: ThresholdInterval
    halvings: int


def euclidean_polar(points) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    rel = pts - pts.mean(axis=0)
    return np.hypot(rel[:, 0], rel[:, 1]), np.arctan2(rel[:, 1], rel[:, 0])


def hyperbolic_at_scale(points, scale: float) -> np.ndarray:
    r, theta = euclidean_polar(points)
    return polar_to_hyperboloid(scale * r, theta)


def scale_embed(g: LabeledGraph, points, t: float, max_halvings: int = MAX_HALVINGS) -> EmbedResult:
    """Embed a Euclidean realization of ``g`` with threshold ``t`` into the hyperboloid.

    Starting from ``s = 1`` the scale is halved until the hyperbolic points,
    with threshold ``s * t``, realize exactly ``g``.
    """
    iv = verify_udg(g, points)
    if not iv.strictly_contains(t):
        raise ValueError(f"threshold {t} is not strictly inside the Euclidean interval [{iv.lo}, {iv.hi})")
    adj = g.adjacency()
    scale = 1.0
    for k in range(max_halvings + 1):
        hp = hyperbolic_at_scale(points, scale)
        hiv = verify_hudg(g, hp)
        st = scale * t
        if hiv.feasible and hiv.strictly_contains(st) and np.array_equal(adjacency_at(hp, st, "hyperboloid"), adj):
            return EmbedResult(Realization("hyperboloid", hp, st), scale, hiv, k)
        scale /= 2.0
    raise EmbeddingError(
        f"no adjacency-preserving scale within {max_halvings} halvings; the Euclidean certificate may be too tight"
    )
