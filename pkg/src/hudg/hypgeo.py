"""Hyperbolic plane models and distances.

The hyperboloid model (forward sheet of ``z^2 - x^2 - y^2 = 1``) is the
canonical representation. Beltrami-Klein and polar coordinates only appear at
conversion boundaries.

Every function accepts either a single point or a stack of points with the
coordinates on the last axis, so ``minkowski_b(P[:, None], P[None, :])``
yields the full Gram matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

ON_SHEET_TOL = 1e-9

MODELS = ("hyperboloid", "klein", "polar")


class OffSheetError(ValueError):
    """Raised when coordinates do not describe a point of the hyperbolic plane."""


@dataclass(frozen=True)
class HPoint:
    """Point on the forward sheet of the hyperboloid."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        check_on_sheet(np.array([self.x, self.y, self.z]))

    def __iter__(self) -> Iterator[float]:
        return iter((self.x, self.y, self.z))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y, self.z], dtype=dtype)


@dataclass(frozen=True)
class KPoint:
    """Point of the open unit disk (Beltrami-Klein model)."""

    x: float
    y: float

    def __post_init__(self):
        if self.x * self.x + self.y * self.y >= 1.0:
            raise OffSheetError(f"Klein point ({self.x}, {self.y}) is not inside the unit disk")

    def __iter__(self) -> Iterator[float]:
        return iter((self.x, self.y))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x, self.y], dtype=dtype)


@dataclass(frozen=True)
class PolarPoint:
    """Hyperbolic polar coordinates about the origin ``(0, 0, 1)``."""

    r: float
    theta: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"polar radius must be nonnegative, got {self.r}")
        object.__setattr__(self, "theta", float(np.mod(self.theta, 2 * np.pi)))

    def __iter__(self) -> Iterator[float]:
        return iter((self.r, self.theta))

    def __array__(self, dtype=None, copy=None):
        return np.array([self.r, self.theta], dtype=dtype)


def minkowski_q(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return p[..., 2] ** 2 - p[..., 0] ** 2 - p[..., 1] ** 2


def check_on_sheet(p, tol: float = ON_SHEET_TOL) -> np.ndarray:
    """Validate hyperboloid coordinates and return them as an array.

    The tolerance on ``|Q(p) - 1|`` is absolute for points near the origin and
    scales with ``z^2`` further out, where ``Q`` itself can only be evaluated
    to about ``z^2`` ulps.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 3:
        raise OffSheetError(f"hyperboloid points need 3 coordinates, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise OffSheetError("hyperboloid coordinates must be finite")
    z = p[..., 2]
    if np.any(z <= 0):
        raise OffSheetError("point lies on the backward sheet (z <= 0)")
    err = np.abs(minkowski_q(p) - 1.0)
    if np.any(err > tol * np.maximum(1.0, z * z)):
        raise OffSheetError(f"point is off the hyperboloid (|Q - 1| = {np.max(err):.3g})")
    return p


def minkowski_b(u, v) -> np.ndarray | float:
    """Minkowski bilinear form ``u_z v_z - u_x v_x - u_y v_y``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    out = u[..., 2] * v[..., 2] - u[..., 0] * v[..., 0] - u[..., 1] * v[..., 1]
    return float(out) if np.ndim(out) == 0 else out


def arccosh(x) -> np.ndarray | float:
    """Inverse hyperbolic cosine in the ``log1p`` form that stays accurate near 1."""
    x = np.asarray(x, dtype=float)
    e = x - 1.0
    out = np.log1p(e + np.sqrt(e * (x + 1.0)))
    return float(out) if np.ndim(out) == 0 else out


def form_to_distance(b, tol: float = ON_SHEET_TOL) -> np.ndarray | float:
    """Map bilinear-form values to distances, clamping round-off below 1."""
    b = np.asarray(b, dtype=float)
    if np.any(b < 1.0 - tol * np.maximum(1.0, np.abs(b))):
        raise OffSheetError(f"bilinear form value {np.min(b)} < 1; points are not on the sheet")
    return arccosh(np.maximum(b, 1.0))


def hyp_distance(u, v) -> np.ndarray | float:
    """Hyperbolic distance ``arccosh(B(u, v))`` between hyperboloid points."""
    return form_to_distance(minkowski_b(u, v))


def pairwise_forms(points) -> np.ndarray:
    p = np.asarray(points, dtype=float).reshape(-1, 3)
    return minkowski_b(p[:, None, :], p[None, :, :])


def pairwise_distances(points) -> np.ndarray:
    g = pairwise_forms(points)
    np.fill_diagonal(g, 1.0)
    return form_to_distance(g)


def polar_to_hyperboloid(r, theta) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    s = np.sinh(r)
    return np.stack([s * np.cos(theta), s * np.sin(theta), np.cosh(r)], axis=-1)


def hyperboloid_to_polar(p) -> tuple[np.ndarray, np.ndarray]:
    p = check_on_sheet(p)
    rho = np.hypot(p[..., 0], p[..., 1])
    r = np.arcsinh(rho)
    theta = np.mod(np.arctan2(p[..., 1], p[..., 0]), 2 * np.pi)
    return r, theta


def klein_to_hyperboloid(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    n2 = k[..., 0] ** 2 + k[..., 1] ** 2
    if np.any(n2 >= 1.0):
        raise OffSheetError("Klein points must lie strictly inside the unit disk")
    z = 1.0 / np.sqrt(1.0 - n2)
    return np.stack([k[..., 0] * z, k[..., 1] * z, z], axis=-1)


def hyperboloid_to_klein(p) -> np.ndarray:
    p = check_on_sheet(p)
    return p[..., :2] / p[..., 2:3]


def convert(p, src: str, dst: str):
    """Convert a point between the ``hyperboloid``, ``klein`` and ``polar`` models.

    Point objects come back as point objects of the target model; raw arrays
    come back as arrays (polar arrays carry ``(r, theta)`` on the last axis).
    """
    for model in (src, dst):
        if model not in MODELS:
            raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")
    wrap = isinstance(p, (HPoint, KPoint, PolarPoint))
    arr = np.asarray(p, dtype=float)

    if src == "hyperboloid":
        h = check_on_sheet(arr)
    elif src == "klein":
        h = klein_to_hyperboloid(arr)
    else:
        if np.any(arr[..., 0] < 0):
            raise ValueError("polar radius must be nonnegative")
        h = polar_to_hyperboloid(arr[..., 0], arr[..., 1])

    if dst == "hyperboloid":
        out = h
    elif dst == "klein":
        out = hyperboloid_to_klein(h)
    else:
        out = np.stack(hyperboloid_to_polar(h), axis=-1)

    if not wrap:
        return out
    cls = {"hyperboloid": HPoint, "klein": KPoint, "polar": PolarPoint}[dst]
    return cls(*(float(c) for c in out))


def rotate_z(points, angle: float) -> np.ndarray:
    """Rotate hyperboloid points about the z-axis (an isometry)."""
    p = np.asarray(points, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    x = c * p[..., 0] - s * p[..., 1]
    y = s * p[..., 0] + c * p[..., 1]
    return np.stack([x, y, p[..., 2]], axis=-1)


def circle_points(center, radius: float, samples: int = 64) -> np.ndarray:
    """Points at hyperbolic distance ``radius`` from ``center`` (hyperboloid coords).

    Built around the origin and carried to ``center`` by the boost that maps
    the origin there.
    """
    c = check_on_sheet(center)
    ring = polar_to_hyperboloid(np.full(samples, radius), np.linspace(0, 2 * np.pi, samples, endpoint=False))
    return ring @ boost_from_origin(c).T


def boost_from_origin(c) -> np.ndarray:
    """Lorentz transformation taking ``(0, 0, 1)`` to ``c``."""
    c = check_on_sheet(c)
    v = c[:2]
    z = c[2]
    m = np.eye(3)
    m[:2, :2] += np.outer(v, v) / (1.0 + z)
    m[:2, 2] = v
    m[2, :2] = v
    m[2, 2] = z
    return m
