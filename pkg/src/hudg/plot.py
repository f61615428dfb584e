"""SVG 1.1 renderings of documents.

Euclidean content is drawn in the plane. Hyperbolic realizations are drawn in
the Beltrami-Klein disk, where geodesics are straight chords; threshold
circles are traced by sampling points at fixed hyperbolic distance.
"""
from __future__ import annotations

import itertools
from xml.sax.saxutils import escape

import numpy as np

from .arrangement import CombinatorialDescription, OrientedLine, format_sign_vector, intersection
from .documents import Document
from .extract import bisector
from .hypgeo import circle_points, hyperboloid_to_klein
from .reduction import LabeledGraph

SIZE = 600
CIRCLE_SAMPLES = 64


class Canvas:
    """Maps a square world window onto an SVG viewport (y axis up)."""

    def __init__(self, xmin, xmax, ymin, ymax, size=SIZE):
        span = max(xmax - xmin, ymax - ymin) or 1.0
        cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
        self.x0, self.y0 = cx - span / 2, cy - span / 2
        self.span = span
        self.size = size
        self.items: list[str] = []

    def px(self, p):
        x = (p[0] - self.x0) / self.span * self.size
        y = self.size - (p[1] - self.y0) / self.span * self.size
        return x, y

    def line(self, p, q, stroke="#333", width=1.0, dash=None):
        (x1, y1), (x2, y2) = self.px(p), self.px(q)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" stroke="{stroke}" stroke-width="{width}"{extra}/>'
        )

    def dot(self, p, r=3.0, fill="#000"):
        x, y = self.px(p)
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r}" fill="{fill}"/>')

    def circle(self, c, radius, stroke="#2a2", fill="none"):
        x, y = self.px(c)
        r = radius / self.span * self.size
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r:.3f}" stroke="{stroke}" fill="{fill}"/>')

    def polygon(self, pts, stroke="#2a2"):
        coords = " ".join("{:.3f},{:.3f}".format(*self.px(p)) for p in pts)
        self.items.append(f'<polygon points="{coords}" stroke="{stroke}" fill="none" stroke-width="0.7"/>')

    def text(self, p, s, size=11, fill="#000"):
        x, y = self.px(p)
        self.items.append(f'<text x="{x:.3f}" y="{y:.3f}" font-size="{size}" fill="{fill}">{escape(s)}</text>')

    def render(self) -> str:
        body = "\n".join(self.items)
        return (
            '<?xml version="1.0" standalone="no"?>\n'
            '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n'
            f'<svg width="{self.size}" height="{self.size}" viewBox="0 0 {self.size} {self.size}" '
            'version="1.1" xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect width="{self.size}" height="{self.size}" fill="#fff"/>\n{body}\n</svg>\n'
        )


def _clip(line: OrientedLine, half: float, center) -> tuple[np.ndarray, np.ndarray]:
    foot = np.asarray(center) - line.evaluate(center) * line.normal
    return foot - half * line.direction, foot + half * line.direction


def plot_arrangement(lines) -> str:
    pts = [p for a, b in itertools.combinations(lines, 2) if (p := intersection(a, b)) is not None]
    pts = np.array(pts) if pts else np.zeros((1, 2))
    center = pts.mean(axis=0)
    half = 1.5 * max(1.0, float(np.abs(pts - center).max()))
    cv = Canvas(center[0] - half, center[0] + half, center[1] - half, center[1] + half)
    for i, ln in enumerate(lines):
        p, q = _clip(ln, 2 * half, center)
        cv.line(p, q)
        # tick on the positive side
        mid = center - ln.evaluate(center) * ln.normal
        cv.line(mid, mid + 0.08 * half * ln.normal, stroke="#c00", width=2)
        cv.text(mid + 0.12 * half * ln.normal, f"l{i + 1}+", fill="#c00")
    return cv.render()


def plot_description(desc: CombinatorialDescription) -> str:
    rows = desc.sorted_cells()
    cv = Canvas(0, 1, 0, 1, size=max(200, 20 * len(rows) + 60))
    cv.text((0.05, 0.95), f"{desc.n} lines, {desc.m} cells", size=14)
    for j, v in enumerate(rows):
        cv.text((0.05, 0.9 - (j + 1) * 0.85 / max(len(rows), 1)), f"c{j + 1}  {format_sign_vector(v)}", size=12)
    return cv.render()


def plot_graph(g: LabeledGraph) -> str:
    n = g.n_vertices
    ang = 2 * np.pi * np.arange(n) / max(n, 1)
    pos = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    cv = Canvas(-1.3, 1.3, -1.3, 1.3)
    for u, v in sorted(g.edges):
        cv.line(pos[u], pos[v], stroke="#888")
    for v in range(n):
        cv.dot(pos[v], r=4)
        cv.text(pos[v] * 1.12, g.labels[v])
    return cv.render()


def _role_color(g, v):
    r = g.role(v) if g is not None else None
    return {"a": "#c00", "b": "#00c", "c": "#080"}.get(r[0], "#000") if r else "#000"


def plot_realization(real, g: LabeledGraph | None = None) -> str:
    t = real.threshold
    if real.geometry == "euclidean":
        pts = real.points
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        pad = (t or 0.0) / 2 + 0.1 * max(float((hi - lo).max()), 1e-9)
        cv = Canvas(lo[0] - pad, hi[0] + pad, lo[1] - pad, hi[1] + pad)
        if g is not None:
            for u, v in sorted(g.edges):
                cv.line(pts[u], pts[v], stroke="#888", width=0.6)
        for v, p in enumerate(pts):
            if t is not None:
                cv.circle(p, t / 2)
            cv.dot(p, fill=_role_color(g, v))
        return cv.render()

    klein = hyperboloid_to_klein(real.points)
    cv = Canvas(-1.05, 1.05, -1.05, 1.05)
    cv.circle((0.0, 0.0), 1.0, stroke="#000")
    if g is not None:
        for u, v in sorted(g.edges):
            cv.line(klein[u], klein[v], stroke="#888", width=0.6)
        try:
            a, b, _ = g.gadget_parts()
        except ValueError:
            a = b = []
        for ai, bi in zip(a, b):
            chord = bisector(real.points[ai], real.points[bi]).klein_line()
            if abs(chord.c) < 1:
                half = np.sqrt(1 - chord.c**2)
                foot = -chord.c * chord.normal
                cv.line(foot - half * chord.direction, foot + half * chord.direction, stroke="#a0a", dash="4,3")
    for v, h in enumerate(real.points):
        if t is not None:
            cv.polygon(hyperboloid_to_klein(circle_points(h, t / 2, CIRCLE_SAMPLES)))
        cv.dot(klein[v], fill=_role_color(g, v))
    return cv.render()


def render(doc: Document, graph: LabeledGraph | None = None) -> str:
    if doc.kind == "arrangement":
        return plot_arrangement(doc.payload)
    if doc.kind == "description":
        return plot_description(doc.payload)
    if doc.kind == "graph":
        return plot_graph(doc.payload)
    return plot_realization(doc.payload, graph)
