import json
import math
import xml.etree.ElementTree as ET

import pytest

from hudg import documents
from hudg.arrangement import OrientedLine
from hudg.cli import EXIT_INVALID, EXIT_OK, EXIT_REJECT, main
from hudg.documents import Document
from hudg.reduction import LabeledGraph
from hudg.witness import Realization


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1
    return code, json.loads(out[0])


@pytest.fixture
def chain(tmp_path, capsys):
    """Arrangement, description and gadget graph for n=3, seed 1."""
    arr, desc, graph = tmp_path / "arr.json", tmp_path / "desc.json", tmp_path / "g.json"
    assert run(capsys, "gen-arrangement", "--n", 3, "--seed", 1, "--out", arr)[0] == EXIT_OK
    assert run(capsys, "cells", "--in", arr, "--out", desc)[0] == EXIT_OK
    assert run(capsys, "reduce", "--in", desc, "--out", graph)[0] == EXIT_OK
    return arr, desc, graph


def test_chain_outputs(chain):
    arr, desc, graph = chain
    assert len(documents.load(arr, "arrangement").payload) == 3
    assert documents.load(desc, "description").payload.m == 7
    g = documents.load(graph, "graph").payload
    assert (g.n_vertices, g.n_edges) == (13, 48)


def test_document_inline_without_out(capsys):
    code, verdict = run(capsys, "gen-arrangement", "--n", 2, "--seed", 5)
    assert code == EXIT_OK
    doc = documents.from_dict(verdict["document"], "arrangement")
    assert len(doc.payload) == 2


def test_round_trip_every_kind(chain):
    for path in chain:
        doc = documents.load(path)
        assert documents.from_dict(json.loads(documents.dumps(doc))).payload == doc.payload


def test_cells_rejects_non_simple(tmp_path, capsys):
    path = tmp_path / "bad.json"
    lines = [OrientedLine(1.0, 0.0, 0.0), OrientedLine(0.0, 1.0, 0.0), OrientedLine(1.0, 1.0, 0.0)]
    documents.save(Document("arrangement", lines), path)
    code, verdict = run(capsys, "cells", "--in", path)
    assert code == EXIT_INVALID and not verdict["ok"]


def test_wrong_kind_is_invalid(chain, capsys):
    arr, _, _ = chain
    assert run(capsys, "reduce", "--in", arr)[0] == EXIT_INVALID


def test_missing_file_is_invalid(tmp_path, capsys):
    assert run(capsys, "cells", "--in", tmp_path / "nope.json")[0] == EXIT_INVALID


def test_malformed_json_is_invalid(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run(capsys, "cells", "--in", path)[0] == EXIT_INVALID


@pytest.fixture
def star_files(tmp_path, star, star_points):
    g, r = tmp_path / "star.json", tmp_path / "star_real.json"
    documents.save(Document("graph", star), g)
    documents.save(Document("realization", Realization("hyperboloid", star_points)), r)
    return g, r


def test_verify_star_certificate(star_files, capsys):
    code, verdict = run(capsys, "verify", "--graph", star_files[0], "--realization", star_files[1])
    assert code == EXIT_OK
    iv = verdict["interval"]
    assert iv["lo"] == pytest.approx(math.cosh(2), abs=1e-6)
    assert iv["hi"] == pytest.approx(math.cosh(2) ** 2 - math.sinh(2) ** 2 / 2, abs=1e-6)
    assert iv["lo"] < math.cosh(verdict["threshold"]) < iv["hi"]


def test_verify_rejects(tmp_path, star_points, capsys):
    g = tmp_path / "k7.json"
    documents.save(Document("graph", LabeledGraph.plain(7, [(0, 1), (2, 5)])), g)
    r = tmp_path / "r.json"
    documents.save(Document("realization", Realization("hyperboloid", star_points)), r)
    code, verdict = run(capsys, "verify", "--graph", g, "--realization", r)
    assert code == EXIT_REJECT and verdict["ok"] is False


def test_solve_star(star_files, tmp_path, capsys):
    out = tmp_path / "sol.json"
    code, verdict = run(capsys, "solve", "--graph", star_files[0], "--geometry", "hyperbolic", "--out", out)
    assert code == EXIT_OK
    assert run(capsys, "verify", "--graph", star_files[0], "--realization", out)[0] == EXIT_OK
    code, verdict = run(capsys, "solve", "--graph", star_files[0], "--geometry", "euclidean", "--restarts", 3)
    assert code == EXIT_REJECT
    assert verdict["best_penalty"] > 0


def test_embed_and_extract(chain, tmp_path, capsys):
    _, desc, graph = chain
    euc, hyp, back = tmp_path / "e.json", tmp_path / "h.json", tmp_path / "back.json"
    code, _ = run(capsys, "solve", "--graph", graph, "--geometry", "euclidean", "--margin", 0.001, "--seed", 1, "--out", euc)
    assert code == EXIT_OK
    assert run(capsys, "embed", "--graph", graph, "--realization", euc, "--out", hyp)[0] == EXIT_OK
    assert run(capsys, "verify", "--graph", graph, "--realization", hyp)[0] == EXIT_OK
    assert run(capsys, "extract", "--graph", graph, "--realization", hyp, "--out", back)[0] == EXIT_OK
    assert documents.load(back).payload == documents.load(desc).payload
    # geometry mismatch is an input error
    assert run(capsys, "embed", "--graph", graph, "--realization", hyp)[0] == EXIT_INVALID
    assert run(capsys, "extract", "--graph", graph, "--realization", euc)[0] == EXIT_INVALID


def test_pipeline(tmp_path, capsys):
    code = main(["pipeline", "--n", "3", "--seed", "1", "--out-dir", str(tmp_path / "run")])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    verdict = json.loads(captured.out)
    steps = {s["step"]: s for s in verdict["steps"]}
    assert steps["cells"]["cells"] == 7
    assert (steps["reduce"]["vertices"], steps["reduce"]["edges"]) == (13, 48)
    assert "reduce" in captured.err
    assert (tmp_path / "run" / "hyperbolic.json").exists()


@pytest.mark.parametrize("kind", ["arr", "desc", "g"])
def test_plot_is_well_formed_svg(chain, tmp_path, capsys, kind):
    src = {"arr": chain[0], "desc": chain[1], "g": chain[2]}[kind]
    out = tmp_path / f"{kind}.svg"
    assert run(capsys, "plot", "--in", src, "--out", out)[0] == EXIT_OK
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")


def test_plot_realization_with_graph(star_files, tmp_path, capsys):
    out = tmp_path / "star.svg"
    assert run(capsys, "plot", "--in", star_files[1], "--out", out, "--graph", star_files[0])[0] == EXIT_OK
    assert len(list(ET.parse(out).getroot().iter())) > 7
