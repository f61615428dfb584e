"""Numerical search for unit disk realizations.

Minimizes a hinge-squared relaxation of the witness predicate from seeded
random starting points, with L-BFGS (default) or plain gradient descent with
an adaptive step. Every candidate is re-checked with the exact verifier
before it is reported, and a failed search says nothing about whether a
realization exists.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .hypgeo import arccosh, polar_to_hyperboloid
from .reduction import LabeledGraph
from .witness import Realization, ThresholdInterval, verify_hudg, verify_udg

log = logging.getLogger(__name__)

# keeps cosh/sinh finite and t away from 0 during line searches
MAX_RADIUS = 50.0
LOG_T_BOUNDS = (-30.0, 30.0)

_ALIASES = {"euclidean": "euclidean", "hyperbolic": "hyperboloid", "hyperboloid": "hyperboloid"}


def normalize_geometry(geometry: str) -> str:
    try:
        return _ALIASES[geometry]
    except KeyError:
        raise ValueError(f"unknown geometry {geometry!r}; expected 'euclidean' or 'hyperbolic'") from None


@dataclass(frozen=True)
class SolverConfig:
    """Search settings. ``margin`` is relative to the threshold ``t``."""

    seed: int = 0
    restarts: int = 20
    max_iters: int = 4000
    margin: float = 0.05
    init_spread: float = 1.0
    step_init: float = 0.1
    patience: int = 300
    method: str = "lbfgs"

    def __post_init__(self):
        if self.method not in ("lbfgs", "gd"):
            raise ValueError(f"unknown method {self.method!r}; expected 'lbfgs' or 'gd'")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.margin <= 0:
            raise ValueError("margin must be positive")
        if self.max_iters < 1 or self.init_spread <= 0 or self.step_init <= 0:
            raise ValueError("max_iters, init_spread and step_init must be positive")


@dataclass
class SolveResult:
    success: bool
    realization: Realization | None
    interval: ThresholdInterval | None
    best_penalty: float
    restarts_used: int
    restart_penalties: list[float] = field(default_factory=list)


def _pairs(n: int):
    return np.triu_indices(n, 1)


def pair_distances(coords: np.ndarray, geometry: str, iu, ju) -> np.ndarray:
    """Distances over the given pairs; hyperbolic coords are polar ``(r, theta)``."""
    if geometry == "euclidean":
        diff = coords[iu] - coords[ju]
        return np.hypot(diff[:, 0], diff[:, 1])
    r, th = coords[:, 0], coords[:, 1]
    ch, sh = np.cosh(r), np.sinh(r)
    b = ch[iu] * ch[ju] - sh[iu] * sh[ju] * np.cos(th[iu] - th[ju])
    return arccosh(np.maximum(b, 1.0))


def penalty(g: LabeledGraph, points, t: float, margin: float, geometry: str) -> float:
    """Hinge-squared violation of ``d <= t - margin`` on edges and ``d >= t + margin`` on non-edges.

    ``points`` are Euclidean coordinates, or hyperboloid coordinates for the
    hyperbolic geometry. Zero exactly when the realization holds with slack.
    """
    geometry = normalize_geometry(geometry)
    pts = np.asarray(points, dtype=float)
    if len(pts) != g.n_vertices:
        raise ValueError(f"graph has {g.n_vertices} vertices but {len(pts)} points were given")
    iu, ju = _pairs(len(pts))
    if geometry == "euclidean":
        d = pair_distances(pts.reshape(-1, 2), geometry, iu, ju)
    else:
        from .hypgeo import pairwise_distances

        d = pairwise_distances(pts.reshape(-1, 3))[iu, ju]
    e = g.adjacency()[iu, ju]
    over = np.maximum(0.0, d[e] - t + margin)
    under = np.maximum(0.0, t + margin - d[~e])
    return float(over @ over + under @ under)


def penalty_grad(g: LabeledGraph, coords, t: float, margin: float, geometry: str):
    """Penalty and its gradient with respect to ``coords`` and ``t`` (``margin`` fixed).

    For the hyperbolic geometry ``coords`` are polar ``(r, theta)`` rows, the
    parametrization the optimizer works in.
    """
    geometry = normalize_geometry(geometry)
    x = np.asarray(coords, dtype=float).reshape(-1, 2)
    iu, ju = _pairs(len(x))
    e = g.adjacency()[iu, ju]
    value, gx, gt, _ = _penalty_core(x, t, margin, margin, geometry, iu, ju, e)
    return value, gx, gt


def _penalty_core(x, t, m_edge, m_non, geometry, iu, ju, e):
    d = pair_distances(x, geometry, iu, ju)
    h = np.where(e, np.maximum(0.0, d - t + m_edge), np.maximum(0.0, t + m_non - d))
    value = float(h @ h)
    # dP/dd per pair
    dd = np.where(e, 2.0 * h, -2.0 * h)
    gt = float(np.sum(np.where(e, -2.0 * h, 2.0 * h)))
    gx = np.zeros_like(x)
    active = h > 0
    if np.any(active):
        iu_a, ju_a, dd_a = iu[active], ju[active], dd[active]
        if geometry == "euclidean":
            diff = x[iu_a] - x[ju_a]
            dist = d[active]
            safe = dist > 1e-12
            unit = np.zeros_like(diff)
            unit[safe] = diff[safe] / dist[safe, None]
            contrib = dd_a[:, None] * unit
            np.add.at(gx, iu_a, contrib)
            np.add.at(gx, ju_a, -contrib)
        else:
            r, th = x[:, 0], x[:, 1]
            ch, sh = np.cosh(r), np.sinh(r)
            ri_c, ri_s, rj_c, rj_s = ch[iu_a], sh[iu_a], ch[ju_a], sh[ju_a]
            delta = th[iu_a] - th[ju_a]
            cos_d, sin_d = np.cos(delta), np.sin(delta)
            b = ri_c * rj_c - ri_s * rj_s * cos_d
            root = np.sqrt(np.maximum(b * b - 1.0, 0.0))
            safe = root > 1e-12
            coef = np.zeros_like(b)
            coef[safe] = dd_a[safe] / root[safe]
            db_dri = ri_s * rj_c - ri_c * rj_s * cos_d
            db_drj = ri_c * rj_s - ri_s * rj_c * cos_d
            db_dthi = ri_s * rj_s * sin_d
            np.add.at(gx[:, 0], iu_a, coef * db_dri)
            np.add.at(gx[:, 0], ju_a, coef * db_drj)
            np.add.at(gx[:, 1], iu_a, coef * db_dthi)
            np.add.at(gx[:, 1], ju_a, -coef * db_dthi)
    return value, gx, gt, d


def _objective(x, log_t, rel_margin, geometry, iu, ju, e):
    """Scale-free objective ``P / t^2`` with margins proportional to ``t``; gradient in ``log t``."""
    t = float(np.exp(log_t))
    m = rel_margin * t
    value, gx, _, d = _penalty_core(x, t, m, m, geometry, iu, ju, e)
    # margin moves with t, so the hinge slopes in t are (1 - rel_margin) and (1 + rel_margin)
    h = np.where(e, np.maximum(0.0, d - t + m), np.maximum(0.0, t + m - d))
    gt = float(np.sum(np.where(e, -2.0 * (1.0 - rel_margin) * h, 2.0 * (1.0 + rel_margin) * h)))
    f = value / (t * t)
    g_log_t = gt / t - 2.0 * value / (t * t)
    return f, gx / (t * t), g_log_t, d


def _slack_ok(d, e, rel_margin):
    """Midpoint threshold has slack ``rel_margin * t`` on both sides; returns t or None."""
    lo = float(d[e].max()) if np.any(e) else 0.0
    hi = float(d[~e].min()) if np.any(~e) else np.inf
    if not np.isfinite(hi):
        t = max(lo * (1.0 + 2.0 * rel_margin), 1e-3) if lo > 0 else 1.0
        return t
    if hi - lo >= rel_margin * (lo + hi) and hi > 0:
        return (lo + hi) / 2.0
    return None


def _reflect(x):
    neg = x[:, 0] < 0
    if np.any(neg):
        x[neg, 0] = -x[neg, 0]
        x[neg, 1] += np.pi
    x[:, 1] = np.mod(x[:, 1], 2 * np.pi)
    return x


def _init(rng, n, geometry, spread):
    if geometry == "euclidean":
        rad = spread * np.sqrt(rng.uniform(0, 1, n))
        ang = rng.uniform(0, 2 * np.pi, n)
        return np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1)
    return np.stack([rng.uniform(0, spread, n), rng.uniform(0, 2 * np.pi, n)], axis=1)


def _descend(x, log_t, inner, cfg, geometry, iu, ju, e):
    f, gx, gt, d = _objective(x, log_t, inner, geometry, iu, ju, e)
    step = cfg.step_init
    best, since_best = f, 0
    for _ in range(cfg.max_iters):
        if f == 0.0 or _slack_ok(d, e, cfg.margin) is not None:
            break
        x_new = x - step * gx
        if geometry != "euclidean":
            x_new = _reflect(x_new)
        if geometry != "euclidean":
            x_new[:, 0] = np.minimum(x_new[:, 0], MAX_RADIUS)
        lt_new = float(np.clip(log_t - step * gt, *LOG_T_BOUNDS))
        f_new, gx_new, gt_new, d_new = _objective(x_new, lt_new, inner, geometry, iu, ju, e)
        if f_new < f:
            x, log_t, f, gx, gt, d = x_new, lt_new, f_new, gx_new, gt_new, d_new
            step *= 1.1
        else:
            step *= 0.5
            if step < 1e-14:
                break
        if f < best * (1 - 1e-6):
            best, since_best = f, 0
        else:
            since_best += 1
            if since_best > cfg.patience:
                break
    return x, f, d


def _lbfgs(x, log_t, inner, cfg, geometry, iu, ju, e):
    shape = x.shape

    def fun(z):
        f, gx, gt, _ = _objective(z[:-1].reshape(shape), z[-1], inner, geometry, iu, ju, e)
        return f, np.append(gx.ravel(), gt)

    if geometry == "euclidean":
        box = [(None, None)] * x.size
    else:
        box = [(-MAX_RADIUS, MAX_RADIUS), (None, None)] * len(x)
    res = minimize(
        fun,
        np.append(x.ravel(), np.clip(log_t, *LOG_T_BOUNDS)),
        jac=True,
        method="L-BFGS-B",
        bounds=box + [LOG_T_BOUNDS],
        options={"maxiter": cfg.max_iters, "ftol": 0.0, "gtol": 1e-14},
    )
    x = res.x[:-1].reshape(shape)
    if geometry != "euclidean":
        x = _reflect(x)
    f, _, _, d = _objective(x, res.x[-1], inner, geometry, iu, ju, e)
    return x, f, d


def _run_restart(g, geometry, cfg, restart, iu, ju, e):
    rng = np.random.default_rng([cfg.seed, restart])
    x = _init(rng, g.n_vertices, geometry, cfg.init_spread)
    d0 = pair_distances(x, geometry, iu, ju)
    log_t = float(np.log(max(d0.mean(), 1e-3)))
    # optimize against a slightly wider margin so the exact slack test has room
    inner = cfg.margin * 1.2
    run = _lbfgs if cfg.method == "lbfgs" else _descend
    x, f, d = run(x, log_t, inner, cfg, geometry, iu, ju, e)
    return x, _slack_ok(d, e, cfg.margin), f


def _exact_check(g, geometry, x, t, rel_margin):
    if geometry == "euclidean":
        pts = (x - x.mean(axis=0)) / t
        t = 1.0
        iv = verify_udg(g, pts)
    else:
        pts = polar_to_hyperboloid(x[:, 0], x[:, 1])
        iv = verify_hudg(g, pts)
    ok = iv.feasible and iv.strictly_contains(t) and iv.width >= rel_margin * t * (1 - 1e-6)
    return ok, Realization(geometry, pts, t), iv


def solve_realization(g: LabeledGraph, geometry: str, cfg: SolverConfig | None = None) -> SolveResult:
    """Search for a realization of ``g`` as a (hyperbolic) unit disk graph.

    Euclidean results are centered and scaled to threshold 1. A failure result
    carries the best relaxed penalty reached, for diagnostics only.
    """
    cfg = cfg or SolverConfig()
    geometry = normalize_geometry(geometry)
    n = g.n_vertices
    if n == 0:
        raise ValueError("graph has no vertices")
    if n == 1:
        pts = np.zeros((1, 2)) if geometry == "euclidean" else np.array([[0.0, 0.0, 1.0]])
        real = Realization(geometry, pts, 1.0)
        return SolveResult(True, real, verify_udg(g, pts) if geometry == "euclidean" else verify_hudg(g, pts), 0.0, 1, [0.0])

    iu, ju = _pairs(n)
    e = g.adjacency()[iu, ju]
    penalties = []
    for restart in range(cfg.restarts):
        x, t, f = _run_restart(g, geometry, cfg, restart, iu, ju, e)
        penalties.append(f)
        if t is not None:
            ok, real, iv = _exact_check(g, geometry, x, t, cfg.margin)
            if ok:
                log.info("restart %d: realization found (t=%.6g)", restart, real.threshold)
                return SolveResult(True, real, iv, 0.0, restart + 1, penalties)
            log.info("restart %d: candidate failed exact re-verification", restart)
        else:
            log.info("restart %d: best penalty %.3g", restart, f)
    return SolveResult(False, None, None, float(min(penalties)), cfg.restarts, penalties)
