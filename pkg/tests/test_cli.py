import json
import random
import subprocess
import sys

import pytest

from oddminor import cli
from oddminor import generators as G
from oddminor.graph import Graph
from oddminor.io import format_graph6, write_graph
from oddminor.planar import RotationEmbedding
from oddminor.pipeline import Config, solve


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.dimacs"):
        path = tmp_path / name
        write_graph(g, path, "dimacs")
        return str(path)
    return make


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, json.loads(out.out) if code == 0 and out.out.startswith("{") else out


def test_solve_matches_library(capsys, graph_file):
    g = G.cycle(5)
    code, data = run(capsys, "solve", graph_file(g), "--t", 3)
    assert code == 0
    assert data == json.loads(solve(g, 3, Config()).dumps())
    assert data["outcome"] == "oddMinorFound"


def test_solve_output_is_byte_stable(capsys, graph_file):
    path = graph_file(G.petersen())
    cli.main(["solve", path, "--t", "4"])
    first = capsys.readouterr().out
    cli.main(["solve", path, "--t", "4"])
    assert capsys.readouterr().out == first


def test_graph6_input_from_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(format_graph6(G.complete(4)) + "\n"))
    code, data = run(capsys, "--graph-format", "graph6", "solve", "-", "--t", 4)
    assert code == 0 and data["graph"]["m"] == 6


def test_reduce_writes_outputs(capsys, graph_file, tmp_path):
    out, trace = tmp_path / "r.dimacs", tmp_path / "trace.json"
    code, data = run(capsys, "reduce", graph_file(G.petersen()), "--t", 4, "--out", out, "--trace-out", trace)
    assert code == 0 and data["n"] == 0
    assert json.loads(trace.read_text()) == data["trace"]
    assert "p edge 0 0" in out.read_text()


def test_odd_model_search_and_dp(capsys, graph_file):
    path = graph_file(G.complete_bipartite(3, 3))
    code, data = run(capsys, "odd-model", path, "--k", 3)
    assert code == 0 and data["verdict"] == "absent" and "nodesVisited" in data
    code, data = run(capsys, "odd-model", path, "--t", 3, "--method", "dp")
    assert code == 0 and data["verdict"] == "absent"
    code, data = run(capsys, "odd-model", graph_file(G.wheel(5)), "--k", 4)
    assert data["verdict"] == "found" and len(data["model"]["nodes"]) == 4


def test_color_treewidth_oct_classify(capsys, graph_file, tmp_path):
    path = graph_file(G.petersen())
    code, data = run(capsys, "color", path, "--kmax", 4)
    assert code == 0 and data["colors"] == 3
    code, data = run(capsys, "color", path, "--k-max", 2)
    assert code == 0 and data["colors"] is None
    code, data = run(capsys, "treewidth", path, "--exact")
    assert data["width"] == 4 and data["exact"]
    dec = tmp_path / "d.json"
    dec.write_text(json.dumps(data["decomposition"]))
    code, data = run(capsys, "color", path, "--kmax", 4, "--decomposition", dec)
    assert code == 0 and data["width"] == 4
    code, data = run(capsys, "treewidth", path, "--heuristic")
    assert data["width"] >= 4 and not data["exact"]
    code, data = run(capsys, "oct", path)
    assert data["size"] == 3
    code, data = run(capsys, "oct", path, "--kmax", 2)
    assert data["size"] is None
    code, data = run(capsys, "classify", graph_file(G.cycle(5)), "--size-threshold", 3, "--apex-threshold", 1)
    assert data["verdict"] == "nearlyBipartite" and len(data["apex"]) == 1


def test_planar_subcommand(capsys, graph_file):
    code, data = run(capsys, "planar", graph_file(G.complete(4)), "--check")
    assert code == 0 and data == {"planar": True, "faces": 4, "eulerOk": True}
    code, data = run(capsys, "planar", graph_file(G.complete(5)), "--check")
    assert data["planar"] is False and len(data["kuratowski"]) == 10
    w = G.wheel(6)
    code, data = run(capsys, "planar", graph_file(w), "--layering", "--face", 0, "--radial-dist", 0, 1,
                     "--radius", 1)
    assert code == 0
    assert data["layering"]["maxOutsideNeighbors"] <= 3
    assert data["radialDistance"]["distance"] == 1
    assert data["diskCover"]["centers"]


def test_listcolor_subcommand(capsys, graph_file, tmp_path):
    rng = random.Random(4)
    g, pts = G.random_triangulation(12, rng)
    e = RotationEmbedding.from_positions(g, pts)
    pos = tmp_path / "pos.txt"
    pos.write_text("".join(f"{x} {y}\n" for x, y in pts))
    x, y = e.outer_face[0], e.outer_face[1]
    lists = tmp_path / "lists.txt"
    lines = ["c lists"]
    for v in range(g.n):
        colors = [1] if v == x else [2] if v == y else [1, 2, 3, 4, 5]
        lines.append("v " + " ".join(map(str, [v] + colors)))
    lists.write_text("\n".join(lines) + "\n")
    code, data = run(capsys, "listcolor", graph_file(g), "--positions", pos, "--lists", lists, "--x", x, "--y", y)
    assert code == 0
    col = data["coloring"]
    assert col[x] == 1 and col[y] == 2 and all(col[u] != col[v] for u, v in g.edges())
    code, _ = run(capsys, "listcolor", graph_file(g), "--positions", pos, "--lists", lists)
    assert code == 2

    k4 = graph_file(G.complete(4), "k4.dimacs")
    from oddminor.planar import planar_embed
    face = planar_embed(G.complete(4)).outer_face
    pre = tmp_path / "pre.txt"
    pre.write_text("".join(f"{v} {c}\n" for v, c in zip(face, (1, 2, 3))))
    full = tmp_path / "full.txt"
    full.write_text("".join(f"v {v} 1 2 3 4 5\n" for v in range(4)))
    code, data = run(capsys, "listcolor", k4, "--lists", full, "--precolor", pre)
    assert code == 0 and sorted(data["coloring"])[:3] == [1, 2, 3]


def test_sweep_subcommand(capsys):
    code, data = run(capsys, "sweep", "--family", "connected:4", "--t", 4)
    assert code == 0 and data["graphs"] == 10 and data["outcomes"]["structureReport"] == 0


def test_text_format(capsys, graph_file):
    assert cli.main(["--format", "text", "oct", graph_file(G.cycle(5))]) == 0
    out = capsys.readouterr().out
    assert "size: 1" in out


# ----------------------------------------------------------------------
# exit codes


def test_exit_code_precondition(capsys, graph_file, tmp_path):
    assert cli.main(["solve", graph_file(G.cycle(5)), "--t", "2"]) == 2
    bad = tmp_path / "bad.dimacs"
    bad.write_text("p edge 2 1\ne 1 7\n")
    assert cli.main(["solve", str(bad), "--t", "3"]) == 2
    assert cli.main(["solve", str(tmp_path / "missing"), "--t", "3"]) == 2
    disconnected = graph_file(Graph(4, [(0, 1), (2, 3)]))
    assert cli.main(["planar", disconnected, "--check"]) == 2
    capsys.readouterr()


def test_exit_code_resource(capsys, graph_file):
    assert cli.main(["--limit-n", "5", "solve", graph_file(G.cycle(7)), "--t", "3"]) == 3
    assert cli.main(["--state-budget", "3", "odd-model", graph_file(G.octahedron()), "--k", "4",
                     "--method", "dp"]) == 3
    assert cli.main(["--limit-n", "6", "treewidth", graph_file(G.cycle(9))]) == 3
    assert "resource limit" in capsys.readouterr().err


def test_exit_code_verification(capsys, graph_file, monkeypatch):
    from oddminor.oddmodel import Violation
    monkeypatch.setattr(cli, "verify_report", lambda g, t, r: Violation("coloring", "forced", ()))
    assert cli.main(["solve", graph_file(G.cycle(6)), "--t", "3"]) == 4
    assert "verification failed" in capsys.readouterr().err


def test_console_script_entry_point(graph_file):
    proc = subprocess.run([sys.executable, "-m", "oddminor.cli", "oct", graph_file(G.complete(4))],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["size"] == 2
