import math

import numpy as np
import pytest

from hudg.hypgeo import polar_to_hyperboloid
from hudg.reduction import LabeledGraph
from hudg.solver import SolverConfig, pair_distances, penalty, penalty_grad, solve_realization
from hudg.witness import adjacency_at, verify_hudg, verify_udg

K2 = LabeledGraph.plain(2, [(0, 1)])


class TestPenalty:
    def test_satisfied_edge(self):
        assert penalty(K2, [(0, 0), (1, 0)], 2.0, 0.1, "euclidean") == 0.0

    def test_violated_edge(self):
        assert penalty(K2, [(0, 0), (3, 0)], 2.0, 0.1, "euclidean") == pytest.approx((3 - 1.9) ** 2)

    def test_edgeless_pair(self):
        assert penalty(LabeledGraph.plain(2, []), [(0, 0), (3, 0)], 2.0, 0.1, "euclidean") == 0.0

    def test_hyperbolic_uses_hyperbolic_distance(self):
        pts = [(0.0, 0.0, 1.0), (math.sinh(3), 0.0, math.cosh(3))]
        assert penalty(K2, pts, 2.0, 0.1, "hyperbolic") == pytest.approx(1.21)

    def test_zero_iff_witness_with_slack(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(2, 7))
            pts = rng.uniform(0, 2, (n, 2))
            t = rng.uniform(0.5, 1.5)
            m = rng.uniform(0.01, 0.2)
            adj = adjacency_at(pts, t, "euclidean")
            if rng.uniform() < 0.3:
                i, j = rng.choice(n, 2, replace=False)
                adj[i, j] = adj[j, i] = not adj[i, j]
            g = LabeledGraph.from_adjacency(adj)
            iv = verify_udg(g, pts)
            holds = iv.lo <= t - m and iv.hi >= t + m
            assert (penalty(g, pts, t, m, "euclidean") == 0.0) == holds

    def test_arity(self):
        with pytest.raises(ValueError):
            penalty(K2, [(0, 0)], 1.0, 0.1, "euclidean")

    def test_unknown_geometry(self):
        with pytest.raises(ValueError):
            penalty(K2, [(0, 0), (1, 0)], 1.0, 0.1, "spherical")


def smooth_instance(rng, geometry, n=6):
    """Random point set whose hinge terms are all at least 1e-3 from their kinks."""
    while True:
        if geometry == "euclidean":
            x = rng.uniform(-1, 1, (n, 2))
        else:
            x = np.column_stack([rng.uniform(0.1, 2.0, n), rng.uniform(0, 2 * np.pi, n)])
        adj = rng.uniform(size=(n, n)) < 0.5
        adj = np.triu(adj, 1)
        g = LabeledGraph.from_adjacency(adj | adj.T)
        iu, ju = np.triu_indices(n, 1)
        d = pair_distances(x, "euclidean" if geometry == "euclidean" else "hyperboloid", iu, ju)
        t, m = rng.uniform(0.5, 1.5), rng.uniform(0.01, 0.1)
        if np.min(np.abs(d - t + m)) > 1e-3 and np.min(np.abs(d - t - m)) > 1e-3 and d.min() > 1e-2:
            return g, x, t, m


def finite_difference(g, x, t, m, geometry, h=1e-6):
    gx = np.zeros_like(x)
    for idx in np.ndindex(*x.shape):
        xp, xm = x.copy(), x.copy()
        xp[idx] += h
        xm[idx] -= h
        gx[idx] = (penalty_grad(g, xp, t, m, geometry)[0] - penalty_grad(g, xm, t, m, geometry)[0]) / (2 * h)
    gt = (penalty_grad(g, x, t + h, m, geometry)[0] - penalty_grad(g, x, t - h, m, geometry)[0]) / (2 * h)
    return gx, gt


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic"])
def test_gradient_matches_central_differences(geometry):
    rng = np.random.default_rng(42)
    for _ in range(25):
        g, x, t, m = smooth_instance(rng, geometry)
        _, gx, gt = penalty_grad(g, x, t, m, geometry)
        fx, ft = finite_difference(g, x, t, m, geometry)
        analytic = np.append(gx.ravel(), gt)
        numeric = np.append(fx.ravel(), ft)
        scale = max(np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-12)
        assert np.linalg.norm(analytic - numeric) / scale <= 1e-5


def test_penalty_grad_value_agrees_with_penalty():
    rng = np.random.default_rng(1)
    g, x, t, m = smooth_instance(rng, "hyperbolic")
    value, _, _ = penalty_grad(g, x, t, m, "hyperbolic")
    assert value == pytest.approx(penalty(g, polar_to_hyperboloid(x[:, 0], x[:, 1]), t, m, "hyperbolic"), rel=1e-9)


class TestSolve:
    def test_triangle_euclidean(self):
        res = solve_realization(LabeledGraph.plain(3, [(0, 1), (1, 2), (0, 2)]), "euclidean")
        assert res.success
        assert verify_udg(LabeledGraph.plain(3, [(0, 1), (1, 2), (0, 2)]), res.realization.points).feasible

    def test_single_vertex(self):
        res = solve_realization(LabeledGraph.plain(1, []), "hyperbolic")
        assert res.success
        np.testing.assert_array_equal(res.realization.points, [[0.0, 0.0, 1.0]])

    def test_star_hyperbolic_alongside_hand_certificate(self, star, star_points):
        res = solve_realization(star, "hyperbolic", SolverConfig(seed=0))
        assert res.success
        assert verify_hudg(star, res.realization.points).feasible
        assert verify_hudg(star, star_points).feasible

    def test_star_euclidean_fails(self, star):
        res = solve_realization(star, "euclidean", SolverConfig(seed=0, restarts=10))
        assert not res.success
        assert res.best_penalty > 0
        assert res.realization is None

    @pytest.mark.parametrize("method", ["lbfgs", "gd"])
    def test_deterministic(self, method):
        g = LabeledGraph.plain(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        cfg = SolverConfig(seed=3, method=method)
        a, b = solve_realization(g, "euclidean", cfg), solve_realization(g, "euclidean", cfg)
        assert a.success and b.success
        np.testing.assert_array_equal(a.realization.points, b.realization.points)
        assert a.realization.threshold == b.realization.threshold

    def test_gradient_descent_finds_path(self):
        g = LabeledGraph.plain(4, [(0, 1), (1, 2), (2, 3)])
        res = solve_realization(g, "hyperbolic", SolverConfig(seed=1, method="gd"))
        assert res.success

    def test_success_has_margin(self):
        rng = np.random.default_rng(9)
        for seed in range(10):
            pts = rng.uniform(0, 2.5, (7, 2))
            g = LabeledGraph.from_adjacency(adjacency_at(pts, 1.0, "euclidean"))
            for geometry in ("euclidean", "hyperbolic"):
                cfg = SolverConfig(seed=seed, restarts=5)
                res = solve_realization(g, geometry, cfg)
                if res.success:
                    t = res.realization.threshold
                    assert res.interval.strictly_contains(t)
                    assert res.interval.width >= cfg.margin * t * (1 - 1e-6)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(restarts=0)
        with pytest.raises(ValueError):
            SolverConfig(margin=0)
        with pytest.raises(ValueError):
            SolverConfig(method="newton")
        with pytest.raises(ValueError):
            solve_realization(K2, "spherical")
