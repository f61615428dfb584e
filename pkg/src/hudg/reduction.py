"""Labeled graphs and the gadget graph built from a combinatorial description."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arrangement import CombinatorialDescription

_ROLE = re.compile(r"^([abc])([1-9][0-9]*)$")


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected simple graph on vertices ``0..n-1`` with string labels.

    Gadget vertices are labeled ``a<i>``, ``b<i>`` and ``c<j>`` (1-based);
    any other label marks a plain vertex.
    """

    labels: tuple[str, ...]
    edges: frozenset

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be unique")
        n = len(labels)
        edges = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
            edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def plain(cls, n: int, edges: Iterable[tuple[int, int]]) -> "LabeledGraph":
        return cls(tuple(f"v{i}" for i in range(n)), frozenset(edges))

    @classmethod
    def from_adjacency(cls, adjacency, labels: Sequence[str] | None = None) -> "LabeledGraph":
        adj = np.asarray(adjacency).astype(bool)
        n = adj.shape[0]
        if adj.shape != (n, n) or not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix must be square and symmetric")
        if labels is None:
            labels = [f"v{i}" for i in range(n)]
        iu, ju = np.nonzero(np.triu(adj, 1))
        return cls(tuple(labels), frozenset(zip(iu.tolist(), ju.tolist())))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        n = len(self.labels)
        adj = np.zeros((n, n), dtype=bool)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def role(self, v: int) -> tuple[str, int] | None:
        """``('a', i)``, ``('b', i)``, ``('c', j)`` for gadget vertices, else None."""
        m = _ROLE.match(self.labels[v])
        return (m.group(1), int(m.group(2))) if m else None

    def gadget_parts(self) -> tuple[list[int], list[int], list[int]]:
        """Vertex indices of ``a_1..a_n``, ``b_1..b_n`` and ``c_1..c_m``, in label order.

        Raises ValueError if the labels do not form a complete gadget layout.
        """
        parts: dict[str, dict[int, int]] = {"a": {}, "b": {}, "c": {}}
        for v in range(len(self.labels)):
            r = self.role(v)
            if r is None:
                raise ValueError(f"vertex {self.labels[v]!r} has no gadget role")
            parts[r[0]][r[1]] = v
        out = []
        for key in "abc":
            idx = parts[key]
            if sorted(idx) != list(range(1, len(idx) + 1)):
                raise ValueError(f"{key}-vertices are not numbered 1..{len(idx)}")
            out.append([idx[k] for k in range(1, len(idx) + 1)])
        if len(out[0]) != len(out[1]):
            raise ValueError("gadget graph needs as many a-vertices as b-vertices")
        return out[0], out[1], out[2]


def gadget_edge_count(n: int, m: int) -> int:
    return n * (n - 1) + m * (m - 1) // 2 + n * m


def build_gd(description: CombinatorialDescription) -> LabeledGraph:
    """Gadget graph on ``A + B + C``.

    ``A``, ``B`` and ``C`` are cliques; ``a_i c_j`` is an edge iff cell ``j`` lies
    on the negative side of line ``i`` and ``b_i c_j`` iff on the positive
    side. Cells are numbered in lexicographic order with ``-`` before ``+``.
    """
    if not description.is_simple:
        raise ValueError(
            f"description has {description.m} cells; a simple arrangement of "
            f"{description.n} lines has {1 + description.n * (description.n + 1) // 2}"
        )
    n = description.n
    cells = description.sorted_cells()
    m = len(cells)
    labels = [f"a{i + 1}" for i in range(n)] + [f"b{i + 1}" for i in range(n)] + [f"c{j + 1}" for j in range(m)]
    a = list(range(n))
    b = list(range(n, 2 * n))
    c = list(range(2 * n, 2 * n + m))

    edges = set()
    for part in (a, b, c):
        edges.update(itertools.combinations(part, 2))
    for j, vec in enumerate(cells):
        for i, s in enumerate(vec):
            edges.add((a[i], c[j]) if s < 0 else (b[i], c[j]))
    return LabeledGraph(tuple(labels), frozenset(edges))


def gadget_cells(g: LabeledGraph) -> list[tuple[int, ...]]:
    """Read the cell sign vectors back off a gadget graph's adjacency."""
    a, b, c = g.gadget_parts()
    out = []
    for cj in c:
        vec = []
        for ai, bi in zip(a, b):
            to_a, to_b = g.has_edge(ai, cj), g.has_edge(bi, cj)
            if to_a == to_b:
                raise ValueError(f"vertex {g.labels[cj]} must see exactly one of {g.labels[ai]}, {g.labels[bi]}")
            vec.append(-1 if to_a else 1)
        out.append(tuple(vec))
    return out
