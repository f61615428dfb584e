"""scikit-learn style front end for the realization search.

``UnitDiskRealizer`` treats a graph's adjacency matrix the way
``sklearn.manifold`` estimators treat a precomputed affinity: ``fit`` finds
point positions, ``embedding_`` holds them.

>>> import numpy as np
>>> adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
>>> est = UnitDiskRealizer(geometry="euclidean", random_state=0).fit(adj)
>>> est.success_
True
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .reduction import LabeledGraph
from .solver import SolverConfig, normalize_geometry, solve_realization
from .witness import adjacency_at


def check_adjacency(X) -> np.ndarray:
    """Validate a square, symmetric 0/1 adjacency matrix with an empty diagonal."""
    X = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if X.shape[0] != X.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {X.shape}")
    if not np.all((X == 0) | (X == 1)):
        raise ValueError("adjacency matrix entries must be 0 or 1")
    A = X.astype(bool)
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix must be symmetric")
    if np.any(np.diag(A)):
        raise ValueError("adjacency matrix must have an empty diagonal")
    return A


class UnitDiskRealizer(BaseEstimator):
    """Find a (hyperbolic) unit disk realization of a graph.

    Parameters
    ----------
    geometry : {"euclidean", "hyperbolic"}
    random_state : int
        Seed; restart ``k`` draws from ``default_rng([random_state, k])``.
    restarts, max_iter, margin, init_spread, method
        Passed to :class:`~hudg.solver.SolverConfig`.

    Attributes
    ----------
    success_ : bool
    embedding_ : ndarray of shape (n, 2) or (n, 3), or None on failure
        Euclidean coordinates, or hyperboloid coordinates.
    threshold_ : float or None
    interval_ : ThresholdInterval or None
    best_penalty_ : float
    n_restarts_ : int
    """

    def __init__(
        self,
        geometry="euclidean",
        random_state=0,
        restarts=20,
        max_iter=4000,
        margin=0.05,
        init_spread=1.0,
        method="lbfgs",
    ):
        self.geometry = geometry
        self.random_state = random_state
        self.restarts = restarts
        self.max_iter = max_iter
        self.margin = margin
        self.init_spread = init_spread
        self.method = method

    def fit(self, X, y=None):
        A = check_adjacency(X)
        geometry = normalize_geometry(self.geometry)
        cfg = SolverConfig(
            seed=int(self.random_state),
            restarts=self.restarts,
            max_iters=self.max_iter,
            margin=self.margin,
            init_spread=self.init_spread,
            method=self.method,
        )
        res = solve_realization(LabeledGraph.from_adjacency(A), geometry, cfg)
        self.success_ = res.success
        self.embedding_ = None if not res.success else np.array(res.realization.points)
        self.threshold_ = None if not res.success else res.realization.threshold
        self.interval_ = res.interval
        self.best_penalty_ = res.best_penalty
        self.n_restarts_ = res.restarts_used
        self.geometry_ = geometry
        self.n_features_in_ = A.shape[1]
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_

    def predict_adjacency(self):
        """Adjacency induced by the fitted points at the fitted threshold."""
        check_is_fitted(self, "embedding_")
        if not self.success_:
            raise ValueError("no realization was found; nothing to predict")
        return adjacency_at(self.embedding_, self.threshold_, self.geometry_).astype(int)
