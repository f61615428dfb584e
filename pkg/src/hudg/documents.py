"""JSON documents exchanged by the command-line tools.

Every file is an object ``{"kind", "version", "meta", "payload"}``. Payloads:

``arrangement``
    ``{"lines": [[a, b, c], ...]}``; the positive side is ``a x + b y + c > 0``.
``description``
    ``{"n": n, "cells": ["+-+", ...]}``, one zero-free sign string per cell.
``graph``
    ``{"labels": ["a1", ...], "edges": [[u, v], ...]}`` with 0-based indices.
``realization``
    ``{"geometry": "euclidean" | "hyperboloid", "points": [[...], ...],
    "threshold": t | null}``; points are ``(x, y)`` or ``(x, y, z)`` on the
    hyperboloid.

Floats are written with Python's shortest round-trip repr, so a load of a
dumped document reproduces every double exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .arrangement import CombinatorialDescription, OrientedLine, format_sign_vector, parse_sign_vector
from .reduction import LabeledGraph
from .witness import Realization

VERSION = 1
KINDS = ("arrangement", "description", "graph", "realization")


class DocumentError(ValueError):
    pass


@dataclass
class Document:
    kind: str
    payload: Any
    meta: dict = field(default_factory=dict)


def _encode(kind: str, value) -> dict:
    if kind == "arrangement":
        return {"lines": [[ln.a, ln.b, ln.c] for ln in value]}
    if kind == "description":
        return {"n": value.n, "cells": [format_sign_vector(v) for v in value.sorted_cells()]}
    if kind == "graph":
        return {"labels": list(value.labels), "edges": [list(e) for e in sorted(value.edges)]}
    if kind == "realization":
        return {
            "geometry": value.geometry,
            "points": np.asarray(value.points).tolist(),
            "threshold": None if value.threshold is None else float(value.threshold),
        }
    raise DocumentError(f"unknown document kind {kind!r}")


def _decode(kind: str, payload: dict):
    if kind == "arrangement":
        return [OrientedLine(*map(float, row)) for row in payload["lines"]]
    if kind == "description":
        return CombinatorialDescription(int(payload["n"]), frozenset(parse_sign_vector(s) for s in payload["cells"]))
    if kind == "graph":
        return LabeledGraph(tuple(payload["labels"]), frozenset(tuple(e) for e in payload["edges"]))
    if kind == "realization":
        t = payload.get("threshold")
        return Realization(payload["geometry"], np.asarray(payload["points"], dtype=float), None if t is None else float(t))
    raise DocumentError(f"unknown document kind {kind!r}")


def to_dict(doc: Document) -> dict:
    return {"kind": doc.kind, "version": VERSION, "meta": dict(doc.meta), "payload": _encode(doc.kind, doc.payload)}


def from_dict(data: dict, expect: str | tuple[str, ...] | None = None) -> Document:
    if not isinstance(data, dict) or "kind" not in data or "payload" not in data:
        raise DocumentError("not a document: missing 'kind' or 'payload'")
    kind = data["kind"]
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    if data.get("version") != VERSION:
        raise DocumentError(f"unsupported document version {data.get('version')!r}")
    if expect is not None:
        allowed = (expect,) if isinstance(expect, str) else expect
        if kind not in allowed:
            raise DocumentError(f"expected a {' or '.join(allowed)} document, got {kind!r}")
    try:
        payload = _decode(kind, data["payload"])
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed {kind} payload: {exc}") from exc
    return Document(kind, payload, dict(data.get("meta") or {}))


def dumps(doc: Document) -> str:
    return json.dumps(to_dict(doc), allow_nan=False)


def loads(text: str, expect=None) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return from_dict(data, expect)


def save(doc: Document, path) -> None:
    Path(path).write_text(dumps(doc) + "\n")


def load(path, expect=None) -> Document:
    return loads(Path(path).read_text(), expect)
