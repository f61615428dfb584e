import math
import random

import numpy as np
import pytest

from hudg.arrangement import CombinatorialDescription, DegenerateArrangementError, enumerate_cells
from hudg.extract import BisectorLine, bisector, extract_description, extract_lines, side_of
from hudg.hypgeo import hyperboloid_to_klein, minkowski_b, minkowski_q, polar_to_hyperboloid
from hudg.pipeline import run_pipeline
from hudg.reduction import LabeledGraph, build_gd
from hudg.witness import verify_hudg

SINH1, COSH1 = math.sinh(1), math.cosh(1)


def one_line_gadget():
    g = build_gd(CombinatorialDescription(1, frozenset({(-1,), (1,)})))
    # a1, b1, c1 (minus cell), c2 (plus cell); threshold 1 separates them
    pts = polar_to_hyperboloid([1.0, 1.0, 0.3, 0.3], [math.pi, 0.0, math.pi, 0.0])
    return g, pts


class TestBisector:
    def test_symmetric_pair_passes_through_origin(self):
        line = bisector(polar_to_hyperboloid(1, 0), polar_to_hyperboloid(1, math.pi))
        assert minkowski_b((0, 0, 1), line.w) == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_bisector(self):
        line = bisector((SINH1, 0.0, COSH1), (0.0, SINH1, COSH1))
        np.testing.assert_allclose(line.w, (SINH1, -SINH1, 0.0), atol=1e-15)
        for r in (0.1, 1.0, 3.0):
            assert minkowski_b(polar_to_hyperboloid(r, math.pi / 4), line.w) == pytest.approx(0.0, abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateArrangementError):
            bisector((0, 0, 1), (0, 0, 1))

    def test_klein_line_has_same_sides(self):
        a, b = polar_to_hyperboloid(0.7, 0.3), polar_to_hyperboloid(1.1, 2.5)
        line = bisector(a, b)
        kl = line.klein_line()
        rng = np.random.default_rng(0)
        for p in polar_to_hyperboloid(rng.uniform(0, 3, 200), rng.uniform(0, 2 * np.pi, 200)):
            assert np.sign(kl.evaluate(hyperboloid_to_klein(p))) == side_of(line, p)


class TestSideOf:
    a = polar_to_hyperboloid(0.8, 0.2)
    b = polar_to_hyperboloid(1.3, 1.9)

    def test_a_side_is_negative(self):
        assert side_of(bisector(self.a, self.b), self.a) == -1

    def test_b_side_is_positive(self):
        assert side_of(bisector(self.a, self.b), self.b) == 1

    def test_midpoint_is_on_the_line(self):
        s = self.a + self.b
        mid = s / math.sqrt(minkowski_q(s))
        assert side_of(bisector(self.a, self.b), mid) == 0

    def test_antisymmetric(self):
        rng = np.random.default_rng(3)
        ab, ba = bisector(self.a, self.b), bisector(self.b, self.a)
        for p in polar_to_hyperboloid(rng.uniform(0, 3, 100), rng.uniform(0, 2 * np.pi, 100)):
            assert side_of(ab, p) == -side_of(ba, p)

    def test_rejects_zero_normal(self):
        with pytest.raises(DegenerateArrangementError):
            BisectorLine((0.0, 0.0, 0.0))


class TestExtractDescription:
    def test_single_line_gadget(self):
        g, pts = one_line_gadget()
        assert verify_hudg(g, pts).feasible
        assert extract_description(g, pts).cells == {(-1,), (1,)}

    def test_cell_order_does_not_matter(self):
        rep = run_pipeline(2, 0)
        g, pts = rep.graph, rep.hyperbolic.points
        a, b, c = g.gadget_parts()
        perm = c[:]
        random.Random(1).shuffle(perm)
        labels = list(g.labels)
        order = a + b + perm
        relabel = {old: new for new, old in enumerate(order)}
        shuffled = LabeledGraph(
            tuple(labels[v] for v in order), frozenset((relabel[u], relabel[v]) for u, v in g.edges)
        )
        assert extract_description(shuffled, pts[order]) == extract_description(g, pts)

    def test_point_on_bisector_is_degenerate(self):
        g, pts = one_line_gadget()
        pts = pts.copy()
        pts[2] = (0.0, 0.0, 1.0)
        with pytest.raises(DegenerateArrangementError):
            extract_description(g, pts)

    @pytest.mark.parametrize("n,seed", [(2, 1), (3, 1), (3, 3)])
    def test_end_to_end_and_consistent_with_adjacency(self, n, seed):
        rep = run_pipeline(n, seed)
        assert rep.ok
        g, pts = rep.graph, rep.hyperbolic.points
        assert extract_description(g, pts) == rep.description
        lines = extract_lines(g, pts)
        a, _, c = g.gadget_parts()
        for i, (ai, line) in enumerate(zip(a, lines)):
            for cj in c:
                assert (side_of(line, pts[cj]) == -1) == g.has_edge(ai, cj)

    def test_description_matches_source_arrangement(self):
        rep = run_pipeline(3, 0)
        assert rep.recovered == enumerate_cells(rep.lines)
