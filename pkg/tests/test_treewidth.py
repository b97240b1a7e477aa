import random

import networkx as nx
import pytest
from hypothesis import given, settings

from oddminor import generators as G
from oddminor.errors import InstanceTooLarge, StateBudgetExceeded
from oddminor.graph import Graph
from oddminor.oddmodel import find_odd_clique_model
from oddminor.treewidth import (TreeDecomposition, chromatic_number_dp, decomposition_from_order, exact_treewidth,
                                heuristic_decomposition, k_colorable, min_fill_order, nice_form, odd_model_dp,
                                order_width, validate_decomposition)

from oracles import brute_chromatic, brute_treewidth
from strategies import graphs


# ----------------------------------------------------------------------
# decompositions


def test_path_decomposition_of_a_path_is_valid():
    g = G.path(4)
    d = TreeDecomposition([{0, 1}, {1, 2}, {2, 3}], [-1, 0, 1])
    assert validate_decomposition(g, d) is None
    assert d.width == 1


def test_single_bag_is_always_valid():
    g = G.petersen()
    d = TreeDecomposition([set(range(10))], [-1])
    assert validate_decomposition(g, d) is None
    assert d.width == 9


def test_missing_edge_is_named():
    g = G.cycle(4)
    d = TreeDecomposition([{0, 1}, {1, 2}, {2, 3}], [-1, 0, 1])
    bad = validate_decomposition(g, d)
    assert bad.invariant == "edge-cover"
    assert bad.items == (0, 3)


def test_disconnected_occurrences_are_rejected():
    g = G.path(3)
    d = TreeDecomposition([{0, 1}, {2}, {1, 2}], [-1, 0, 1])
    bad = validate_decomposition(g, d)
    assert bad.invariant == "connectivity" and bad.items == (1,)


def test_uncovered_vertex_and_bad_tree_are_rejected():
    g = Graph(3, [(0, 1)])
    assert validate_decomposition(g, TreeDecomposition([{0, 1}], [-1])).invariant == "vertex-cover"
    assert validate_decomposition(g, TreeDecomposition([{0, 1}, {2}], [-1, -1])).invariant == "tree"
    assert validate_decomposition(g, TreeDecomposition([{0, 1}, {2}], [1, 0])).invariant == "tree"
    assert validate_decomposition(g, TreeDecomposition([{0, 1, 2, 7}], [-1])).invariant == "vertex-range"


def test_json_round_trip_and_declared_width():
    d = heuristic_decomposition(G.grid(3, 3))
    assert TreeDecomposition.from_json(d.to_json()) == d
    data = d.to_json()
    data["width"] += 1
    with pytest.raises(ValueError):
        TreeDecomposition.from_json(data)


# ----------------------------------------------------------------------
# exact and heuristic treewidth


@pytest.mark.parametrize("g, width", [
    (G.path(6), 1),
    (G.star(5), 1),
    (G.cycle(7), 2),
    (G.complete(5), 4),
    (G.complete_bipartite(3, 3), 3),
    (G.petersen(), 4),
    (G.grid(3, 3), 3),  # frozen from the brute-force oracle (about 3 s)
    (G.grid(4, 4), 4),
    (Graph(3, []), 0),
])
def test_exact_treewidth_examples(g, width):
    w, d = exact_treewidth(g)
    assert w == width == d.width
    assert validate_decomposition(g, d) is None


def test_exact_treewidth_size_limit():
    with pytest.raises(InstanceTooLarge):
        exact_treewidth(G.path(12), limit=10)


def test_exact_matches_brute_force_on_random_graphs():
    rng = random.Random(5)
    for _ in range(60):
        g = G.random_graph(rng.randint(1, 7), rng.random(), rng)
        assert exact_treewidth(g)[0] == brute_treewidth(g)


def test_exact_matches_networkx_on_chordal_graphs():
    rng = random.Random(9)
    for _ in range(30):
        g = G.random_graph(rng.randint(3, 11), rng.random(), rng)
        order = min_fill_order(g)
        # filling in along any order gives a chordal graph whose treewidth is that order's width
        filled = decomposition_from_order(g, order)
        H = nx.Graph()
        H.add_nodes_from(range(g.n))
        for b in filled.bags:
            H.add_edges_from((u, v) for u in b for v in b if u < v)
        h = Graph.from_networkx(H)
        assert nx.is_chordal(H)
        assert exact_treewidth(h)[0] == filled.width == order_width(g, order)


@given(graphs(max_n=9))
@settings(max_examples=80, deadline=None)
def test_heuristic_is_valid_and_bounds_exact(g):
    d = heuristic_decomposition(g)
    assert validate_decomposition(g, d) is None
    assert d.width >= exact_treewidth(g)[0]


@pytest.mark.parametrize("n", [3, 5, 8, 13])
def test_heuristic_is_exact_on_cycles_and_trees(n):
    assert heuristic_decomposition(G.cycle(n)).width == 2
    assert heuristic_decomposition(G.path(n)).width == 1


@given(graphs(max_n=9))
@settings(max_examples=60, deadline=None)
def test_nice_form_shape(g):
    d = heuristic_decomposition(g)
    nodes = nice_form(d)
    assert nodes[-1].bag == ()
    for i, node in enumerate(nodes):
        assert all(c < i for c in node.children)
        kids = [nodes[c] for c in node.children]
        if node.kind == "leaf":
            assert node.bag == () and not kids
        elif node.kind == "introduce":
            assert set(node.bag) == set(kids[0].bag) | {node.vertex} and node.vertex not in kids[0].bag
        elif node.kind == "forget":
            assert set(kids[0].bag) == set(node.bag) | {node.vertex} and node.vertex not in node.bag
        else:
            assert node.kind == "join" and kids[0].bag == kids[1].bag == node.bag
        assert len(node.bag) <= d.width + 1
    # every vertex is forgotten exactly once
    forgotten = sorted(node.vertex for node in nodes if node.kind == "forget")
    assert forgotten == list(range(g.n))


# ----------------------------------------------------------------------
# chromatic DP


@pytest.mark.parametrize("g, chi", [
    (G.complete(4), 4),
    (G.cycle(5), 3),
    (G.cycle(6), 2),
    (G.petersen(), 3),
    (G.wheel(5), 4),
    (Graph(4, []), 1),
])
def test_chromatic_dp_examples(g, chi):
    k, col = chromatic_number_dp(g, heuristic_decomposition(g), 6)
    assert k == chi
    assert col.is_proper(g, k)


def test_chromatic_dp_returns_none_above_cap():
    g = G.complete(5)
    assert chromatic_number_dp(g, heuristic_decomposition(g), 4) is None
    assert k_colorable(g, heuristic_decomposition(g), 4) is None


def test_chromatic_dp_matches_oracle_on_small_graphs(small_graphs):
    for g in small_graphs:
        k, col = chromatic_number_dp(g, heuristic_decomposition(g), g.n)
        assert k == brute_chromatic(g)
        assert col.is_proper(g, k)


def test_chromatic_dp_is_independent_of_decomposition():
    rng = random.Random(3)
    for _ in range(25):
        g = G.random_graph(rng.randint(2, 10), rng.random(), rng)
        order = list(range(g.n))
        rng.shuffle(order)
        d1 = heuristic_decomposition(g)
        d2 = decomposition_from_order(g, order)
        assert chromatic_number_dp(g, d1, g.n)[0] == chromatic_number_dp(g, d2, g.n)[0]


def test_chromatic_dp_budget():
    g = G.grid(4, 4)
    with pytest.raises(StateBudgetExceeded):
        k_colorable(g, heuristic_decomposition(g), 3, budget=10)


# ----------------------------------------------------------------------
# odd-model DP


@pytest.mark.parametrize("g, k, found", [
    (G.cycle(5), 3, True),
    (G.cycle(6), 3, False),
    (G.complete_bipartite(3, 3), 3, False),
    (G.complete(4), 4, True),
    (G.wheel(5), 4, True),
    (G.grid(3, 3), 3, False),
    (G.petersen(), 3, True),
    (G.complete(3), 4, False),
])
def test_odd_model_dp_examples(g, k, found):
    verdict = odd_model_dp(g, heuristic_decomposition(g), k)
    assert verdict.found is found
    assert verdict.verdict == ("found" if found else "absent")


def test_odd_model_dp_matches_search(small_graphs):
    for g in small_graphs:
        d = heuristic_decomposition(g)
        for k in (3, 4):
            want = find_odd_clique_model(g, k) is not None
            assert odd_model_dp(g, d, k).found is want, (g.edges(), k)


def test_odd_model_dp_is_independent_of_decomposition():
    rng = random.Random(11)
    for _ in range(20):
        g = G.random_graph(rng.randint(3, 7), rng.random(), rng)
        order = list(range(g.n))
        rng.shuffle(order)
        for k in (3, 4):
            a = odd_model_dp(g, heuristic_decomposition(g), k).found
            b = odd_model_dp(g, decomposition_from_order(g, order), k).found
            assert a is b


def test_odd_model_dp_budget():
    g = G.grid(3, 4)
    with pytest.raises(StateBudgetExceeded):
        odd_model_dp(g, heuristic_decomposition(g), 4, budget=50)
