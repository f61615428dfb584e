"""Command-line front end.

Each command prints a one-line JSON verdict on stdout. Exit status is 0 on
success or acceptance, 1 on rejection or search failure and 2 on invalid
input.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import documents
from .arrangement import DegenerateArrangementError, enumerate_cells, random_simple_arrangement
from .documents import Document, DocumentError
from .embed import EmbeddingError, scale_embed
from .extract import extract_description
from .hypgeo import OffSheetError
from .pipeline import PIPELINE_MARGIN, run_pipeline
from .plot import render
from .reduction import build_gd
from .solver import SolverConfig, solve_realization
from .witness import interval_to_radius, verify

EXIT_OK, EXIT_REJECT, EXIT_INVALID = 0, 1, 2


class Rejected(Exception):
    def __init__(self, verdict: dict):
        super().__init__(verdict.get("reason", "rejected"))
        self.verdict = verdict


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _emit(verdict: dict) -> None:
    sys.stdout.write(json.dumps(verdict, allow_nan=False) + "\n")


def _write(doc: Document, out, verdict: dict) -> dict:
    if out:
        documents.save(doc, out)
        verdict["out"] = str(out)
    else:
        verdict["document"] = documents.to_dict(doc)
    return verdict


def _interval_dict(iv) -> dict:
    return {"lo": _num(iv.lo), "hi": _num(iv.hi), "space": iv.space, "feasible": iv.feasible}


def cmd_gen_arrangement(args):
    lines = random_simple_arrangement(args.n, args.seed)
    doc = Document("arrangement", lines, {"seed": str(args.seed), "generator": "random_simple_arrangement"})
    return _write(doc, args.out, {"ok": True, "command": "gen-arrangement", "lines": len(lines)})


def cmd_cells(args):
    src = documents.load(args.inp, "arrangement")
    desc = enumerate_cells(src.payload)
    doc = Document("description", desc, {"source": str(args.inp)})
    return _write(doc, args.out, {"ok": True, "command": "cells", "n": desc.n, "cells": desc.m})


def cmd_reduce(args):
    src = documents.load(args.inp, "description")
    g = build_gd(src.payload)
    doc = Document("graph", g, {"source": str(args.inp)})
    return _write(doc, args.out, {"ok": True, "command": "reduce", "vertices": g.n_vertices, "edges": g.n_edges})


def cmd_verify(args):
    g = documents.load(args.graph, "graph").payload
    real = documents.load(args.realization, "realization").payload
    iv = verify(g, real)
    verdict = {"ok": iv.feasible, "command": "verify", "geometry": real.geometry, "interval": _interval_dict(iv)}
    if iv.feasible:
        verdict["threshold"] = interval_to_radius(iv)
        if real.threshold is not None:
            verdict["stored_threshold_valid"] = iv.strictly_contains(real.threshold)
    else:
        raise Rejected(verdict)
    return verdict


def _solver_config(args, margin_default):
    return SolverConfig(
        seed=args.seed,
        restarts=args.restarts,
        max_iters=args.max_iters,
        margin=args.margin if args.margin is not None else margin_default,
        init_spread=args.init_spread,
        method=args.method,
    )


def cmd_solve(args):
    g = documents.load(args.graph, "graph").payload
    cfg = _solver_config(args, SolverConfig.margin)
    res = solve_realization(g, args.geometry, cfg)
    verdict = {
        "ok": res.success,
        "command": "solve",
        "geometry": args.geometry,
        "restarts_used": res.restarts_used,
        "best_penalty": res.best_penalty,
    }
    if not res.success:
        verdict["note"] = "search failure is not evidence of non-realizability"
        raise Rejected(verdict)
    verdict["interval"] = _interval_dict(res.interval)
    doc = Document("realization", res.realization, {"seed": str(args.seed), "source": str(args.graph)})
    return _write(doc, args.out, verdict)


def cmd_embed(args):
    g = documents.load(args.graph, "graph").payload
    real = documents.load(args.realization, "realization").payload
    if real.geometry != "euclidean":
        raise DocumentError("embed needs a euclidean realization")
    t = real.threshold
    if t is None:
        t = interval_to_radius(verify(g, real))
    res = scale_embed(g, real.points, t)
    verdict = {"ok": True, "command": "embed", "scale": res.scale, "interval": _interval_dict(res.interval)}
    doc = Document("realization", res.realization, {"source": str(args.realization), "scale": repr(res.scale)})
    return _write(doc, args.out, verdict)


def cmd_extract(args):
    g = documents.load(args.graph, "graph").payload
    real = documents.load(args.realization, "realization").payload
    if real.geometry != "hyperboloid":
        raise DocumentError("extract needs a hyperboloid realization")
    iv = verify(g, real)
    if not iv.feasible:
        raise Rejected({"ok": False, "command": "extract", "reason": "realization does not realize the graph"})
    desc = extract_description(g, real.points)
    doc = Document("description", desc, {"source": str(args.realization)})
    return _write(doc, args.out, {"ok": True, "command": "extract", "n": desc.n, "cells": desc.m})


def cmd_pipeline(args):
    cfg = _solver_config(args, PIPELINE_MARGIN)
    rep = run_pipeline(args.n, args.seed, cfg)
    for step in rep.steps:
        print(" ".join(f"{k}={v}" for k, v in step.items()), file=sys.stderr)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        docs = {
            "arrangement": rep.lines,
            "description": rep.description,
            "graph": rep.graph,
            "euclidean": rep.euclidean,
            "hyperbolic": rep.hyperbolic,
            "recovered": rep.recovered,
        }
        kinds = {"euclidean": "realization", "hyperbolic": "realization", "recovered": "description"}
        for name, value in docs.items():
            if value is not None:
                documents.save(Document(kinds.get(name, name), value, {"seed": str(args.seed)}), out / f"{name}.json")
    verdict = {"command": "pipeline", **rep.summary()}
    if not rep.ok:
        raise Rejected(verdict)
    return verdict


def cmd_plot(args):
    doc = documents.load(args.inp)
    graph = documents.load(args.graph, "graph").payload if args.graph else None
    svg = render(doc, graph)
    Path(args.out).write_text(svg)
    return {"ok": True, "command": "plot", "kind": doc.kind, "out": str(args.out)}


def _add_solver_flags(p, seed_help="solver seed"):
    p.add_argument("--seed", type=int, default=0, help=seed_help)
    p.add_argument("--restarts", type=int, default=SolverConfig.restarts)
    p.add_argument("--max-iters", type=int, default=SolverConfig.max_iters)
    p.add_argument("--margin", type=float, default=None, help="slack relative to the threshold")
    p.add_argument("--init-spread", type=float, default=SolverConfig.init_spread)
    p.add_argument("--method", choices=("lbfgs", "gd"), default=SolverConfig.method)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hudg", description="Hyperbolic unit disk graph toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress lines on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-arrangement", help="random simple line arrangement")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_arrangement)

    p = sub.add_parser("cells", help="combinatorial description of an arrangement")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("reduce", help="gadget graph of a description")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check a realization certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--realization", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="search for a realization")
    p.add_argument("--graph", required=True)
    p.add_argument("--geometry", choices=("euclidean", "hyperbolic"), required=True)
    p.add_argument("--out")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("embed", help="carry a euclidean realization into the hyperboloid")
    p.add_argument("--graph", required=True)
    p.add_argument("--realization", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the description from a hyperbolic gadget realization")
    p.add_argument("--graph", required=True)
    p.add_argument("--realization", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out-dir")
    _add_solver_flags(p, seed_help="arrangement and solver seed")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("plot", help="render a document as SVG")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--graph", help="graph document for drawing edges of a realization")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        verdict = args.func(args)
    except Rejected as exc:
        _emit(exc.verdict)
        return EXIT_REJECT
    except EmbeddingError as exc:
        _emit({"ok": False, "command": args.command, "error": str(exc)})
        return EXIT_REJECT
    except (DocumentError, DegenerateArrangementError, OffSheetError, ValueError, OSError) as exc:
        _emit({"ok": False, "command": args.command, "error": str(exc)})
        return EXIT_INVALID
    _emit(verdict)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
