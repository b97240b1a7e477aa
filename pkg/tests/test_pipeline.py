import json
import random
from dataclasses import replace

import pytest

from oddminor import generators as G
from oddminor.errors import InstanceTooLarge, PreconditionViolation, StateBudgetExceeded, TimeLimitExceeded
from oddminor.graph import Coloring, Graph
from oddminor.io import format_graph6
from oddminor.oddmodel import OddModel, find_odd_clique_model
from oddminor.pipeline import (COLORED, IRREDUCIBLE, ODD_MINOR_FOUND, STRUCTURE_REPORT, Config, conjecture_sweep,
                               family_graphs, linked_components, separator_witnesses, solve, verify_report)
from oddminor.structure import Thresholds


# ----------------------------------------------------------------------
# examples


def test_k4_has_odd_k4():
    r = solve(G.complete(4), 4)
    assert r.outcome == ODD_MINOR_FOUND and verify_report(G.complete(4), 4, r) is None


def test_k33_is_two_colored():
    g = G.complete_bipartite(3, 3)
    r = solve(g, 3)
    assert r.outcome == COLORED
    assert r.coloring.num_colors == 2 and r.coloring.is_proper(g, 2)
    assert verify_report(g, 3, r) is None


def test_c5_has_odd_triangle():
    r = solve(G.cycle(5), 3)
    assert r.outcome == ODD_MINOR_FOUND and r.model.t == 3
    assert verify_report(G.cycle(5), 3, r) is None


def test_preconditions_and_limits():
    with pytest.raises(PreconditionViolation):
        solve(G.cycle(5), 2)
    with pytest.raises(InstanceTooLarge):
        solve(G.path(50), 4)
    assert solve(G.path(50), 4, Config(limit_n=60)).outcome == COLORED


def test_empty_graph():
    r = solve(Graph(0, []), 4)
    assert r.outcome == COLORED and verify_report(Graph(0, []), 4, r) is None


# ----------------------------------------------------------------------
# closure: every report verifies


@pytest.mark.parametrize("t", [3, 4, 5, 6])
def test_every_report_verifies(t):
    rng = random.Random(40 + t)
    seen = set()
    for _ in range(250):
        g = G.random_graph(rng.randint(1, 11), rng.random(), rng)
        r = solve(g, t)
        assert verify_report(g, t, r) is None, format_graph6(g)
        seen.add(r.outcome)
    assert STRUCTURE_REPORT not in seen or t > 5


def test_odd_minor_found_is_sound_on_the_original():
    # the converse fails: a graph with an odd K_t model may still be colored
    rng = random.Random(8)
    found = 0
    for _ in range(120):
        g = G.random_graph(rng.randint(3, 9), rng.random(), rng)
        for t in (3, 4, 5):
            if solve(g, t).outcome == ODD_MINOR_FOUND:
                found += 1
                assert find_odd_clique_model(g, t) is not None
    assert found > 50


def test_tampered_coloring_is_rejected():
    g = G.complete_bipartite(3, 3)
    r = solve(g, 3)
    bad = list(r.coloring.assignment)
    bad[0] = bad[3]
    v = verify_report(g, 3, replace(r, coloring=Coloring(bad)))
    assert v is not None and v.invariant == "coloring"


def test_model_missing_connector_is_rejected():
    g = G.complete(4)
    r = solve(g, 4)
    m = r.model
    crippled = OddModel(m.nodes, m.coloring, {k: v for i, (k, v) in enumerate(m.connectors.items()) if i})
    v = verify_report(g, 4, replace(r, model=crippled))
    assert v is not None


def test_inconsistent_reports_are_rejected():
    g = G.cycle(5)
    r = solve(g, 3)
    assert verify_report(g, 3, replace(r, outcome=COLORED)).invariant == "exactly-one"
    assert verify_report(g, 3, replace(r, outcome="maybe")).invariant == "outcome"
    assert verify_report(g, 4, r).invariant == "t"
    assert verify_report(G.cycle(7), 3, r).invariant == "trace-original"


# ----------------------------------------------------------------------
# structure branch


def _forced_structure(g, t):
    # disable both the model search and the coloring DP to reach the last branch
    return solve(g, t, Config(model_max_n=3, dp_width_cap=-1))


def test_structure_branch_report():
    g = G.complete(5)
    r = _forced_structure(g, 4)
    assert r.outcome == STRUCTURE_REPORT and r.model_search == "skipped"
    assert verify_report(g, 4, r) is None
    data = r.to_json()["structure"]
    assert data["status"] == IRREDUCIBLE
    assert len(data["bags"]) == len(data["bagDegrees"]) == len(data["decomposition"]["bags"])
    assert data["maxBagDegree"] == max(data["bagDegrees"])


def test_structure_branch_flags_bags_classified_neither():
    g = G.complete(8)
    r = solve(g, 6, Config(model_max_n=3, dp_width_cap=-1, thresholds=Thresholds(2, 1, 1)))
    assert r.outcome == STRUCTURE_REPORT
    # clique bags with more than two vertices need an apex set of size |bag| - 2
    bags = r.structure.decomposition.bags
    assert r.structure.flagged == [i for i, b in enumerate(bags) if len(b) >= 4] != []
    assert verify_report(g, 6, r) is None
    tampered = replace(r.structure, bags=[])
    assert verify_report(g, 6, replace(r, structure=tampered)).invariant == "bags"


def test_linked_components():
    g = G.cycle(4)
    assert sorted(map(sorted, linked_components(g, (0, 2), 0))) == [[1], [3]]
    assert linked_components(g, (0, 2), 1) == []
    # a component missing a separator vertex does not count
    assert linked_components(G.path(4), (0, 2), 0) == [frozenset({1})]


def test_even_linked_witness():
    g = G.complete_bipartite(2, 3)
    found = separator_witnesses(g, 3)
    assert {"kind": "evenLinked", "set": [0, 1], "components": [[2], [3], [4]]} in found


def test_odd_linked_witness():
    # three terminals and five triangles, each triangle vertex tied to one terminal
    edges = []
    for k in range(5):
        x, y, z = 3 + 3 * k, 4 + 3 * k, 5 + 3 * k
        edges += [(x, y), (y, z), (x, z), (0, x), (1, y), (2, z)]
    g = Graph(18, edges)
    found = separator_witnesses(g, 3, limit=400)
    odd = [w for w in found if w["kind"] == "oddLinked"]
    assert odd[0]["set"] == [0, 1, 2] and len(odd[0]["components"]) == 5
    assert separator_witnesses(g, 3, limit=5) == []  # scan stops before reaching the triple


# ----------------------------------------------------------------------
# determinism, limits and JSON


def test_reports_are_deterministic():
    rng = random.Random(2)
    for _ in range(20):
        g = G.random_graph(rng.randint(2, 10), rng.random(), rng)
        assert solve(g, 4).dumps() == solve(g, 4).dumps()


def test_report_json_shape():
    r = solve(G.petersen(), 4)
    data = json.loads(r.dumps())
    assert data["schema"] == 1 and data["exactDeskScale"] is True
    assert data["outcome"] in (COLORED, ODD_MINOR_FOUND, STRUCTURE_REPORT)
    assert data["graph"] == {"n": 10, "m": 15, "graph6": format_graph6(G.petersen())}
    assert "timings" not in data
    assert set(json.loads(r.dumps(timings=True))["timings"]) >= {"reduce", "modelSearch"}
    assert sum(data[k] is not None for k in ("coloring", "model", "structure")) == 1


def test_state_budget_carries_partial_report():
    g = G.octahedron()  # irreducible at t=4, so the DP runs on all six vertices
    with pytest.raises(StateBudgetExceeded) as info:
        solve(g, 4, Config(model_max_n=3, state_budget=5))
    assert info.value.partial.trace.original == g


def test_time_limit_carries_partial_report():
    g = G.petersen()
    with pytest.raises(TimeLimitExceeded) as info:
        solve(g, 4, Config(timeout_s=0))
    assert info.value.partial.t == 4
    assert "reduce" in info.value.partial.timings


# ----------------------------------------------------------------------
# sweeps


def test_family_specs():
    assert sum(1 for _ in family_graphs("connected:4")) == 1 + 1 + 2 + 6
    assert sum(1 for _ in family_graphs("all:3")) == 1 + 2 + 4
    a = [g.edges() for g in family_graphs("random:5:8:3")]
    assert a == [g.edges() for g in family_graphs("random:5:8:3")] and len(a) == 5
    for bad in ("connected", "random:1:2", "nope:3", "all:x"):
        with pytest.raises(PreconditionViolation):
            list(family_graphs(bad))


def test_sweep_small_families():
    for t in (3, 4):
        s = conjecture_sweep("connected:5", t)
        assert s["graphs"] == 1 + 1 + 2 + 6 + 21
        assert s["outcomes"][STRUCTURE_REPORT] == 0 and s["flagged"] == [] and s["invalid"] == []
        assert sum(s["outcomes"].values()) == s["graphs"]


def test_sweep_aggregation_order_does_not_depend_on_workers():
    assert conjecture_sweep("random:30:8:4", 4) == conjecture_sweep("random:30:8:4", 4, workers=2)
