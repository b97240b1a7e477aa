import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oddminor import generators as G
from oddminor.errors import InstanceTooLarge, PreconditionViolation
from oddminor.graph import Graph, is_bipartite
from oddminor.structure import (Thresholds, chromatic_number, classify_bag, k_coloring, min_odd_cycle_transversal,
                                nearly_bipartite_coloring)

from oracles import brute_chromatic, brute_oct
from strategies import graphs


def _relabel(g, perm):
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


# ----------------------------------------------------------------------
# exact coloring helpers


def test_k_coloring_examples():
    assert k_coloring(G.cycle(5), 2) is None
    assert k_coloring(G.cycle(5), 3).is_proper(G.cycle(5), 3)
    assert k_coloring(Graph(0, []), 0).assignment == ()
    assert chromatic_number(G.petersen())[0] == 3
    with pytest.raises(InstanceTooLarge):
        chromatic_number(G.path(5), limit=4)


def test_chromatic_number_matches_oracle(small_graphs):
    for g in small_graphs:
        k, col = chromatic_number(g)
        assert k == brute_chromatic(g) and col.is_proper(g, k)


# ----------------------------------------------------------------------
# odd cycle transversal


@pytest.mark.parametrize("g, size", [
    (G.complete_bipartite(3, 4), 0),
    (G.grid(3, 3), 0),
    (G.cycle(5), 1),
    (G.complete(4), 2),
    (G.complete(6), 4),
    (G.petersen(), 3),
    (Graph(0, []), 0),
])
def test_oct_examples(g, size):
    x = min_odd_cycle_transversal(g)
    assert len(x) == size
    assert is_bipartite(g, [v for v in range(g.n) if v not in x]).bipartite


def test_oct_respects_k_max():
    assert min_odd_cycle_transversal(G.complete(6), 3) is None
    assert len(min_odd_cycle_transversal(G.complete(6), 4)) == 4


def test_oct_matches_brute_force_on_small_graphs(small_graphs):
    for g in small_graphs:
        assert len(min_odd_cycle_transversal(g)) == brute_oct(g)


def test_oct_matches_brute_force_on_random_graphs():
    rng = random.Random(17)
    for _ in range(80):
        g = G.random_graph(rng.randint(6, 11), rng.random(), rng)
        x = min_odd_cycle_transversal(g)
        assert len(x) == brute_oct(g)
        assert is_bipartite(g, [v for v in range(g.n) if v not in x]).bipartite


@given(graphs(max_n=9), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_oct_size_is_relabeling_invariant(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert len(min_odd_cycle_transversal(g)) == len(min_odd_cycle_transversal(_relabel(g, perm)))


# ----------------------------------------------------------------------
# nearly bipartite coloring


def test_nearly_bipartite_examples():
    g = G.complete_bipartite(2, 3)
    col = nearly_bipartite_coloring(g, ())
    assert col.is_proper(g) and col.num_colors == 2
    g = G.cycle(5)
    col = nearly_bipartite_coloring(g, {0})
    assert col.is_proper(g) and col.num_colors == 3
    g = G.complete(4)
    col = nearly_bipartite_coloring(g, {0, 1})
    assert col.is_proper(g) and col.num_colors == 4


def test_nearly_bipartite_rejects_non_bipartite_remainder():
    with pytest.raises(PreconditionViolation):
        nearly_bipartite_coloring(G.complete(4), {0})


def test_nearly_bipartite_uses_at_most_one_extra_color():
    rng = random.Random(23)
    for _ in range(60):
        g = G.random_graph(rng.randint(2, 10), rng.random(), rng)
        x = set(min_odd_cycle_transversal(g))
        # pad the apex set with random extra vertices
        x |= {v for v in range(g.n) if rng.random() < 0.2}
        col = nearly_bipartite_coloring(g, x)
        assert col.is_proper(g)
        assert col.num_colors <= brute_chromatic(g) + 1


# ----------------------------------------------------------------------
# bag classification


def test_thresholds_default():
    th = Thresholds.default(100, 4)
    assert th == Thresholds(size=10 * math.ceil(math.log2(100)), apex=16, degree=16 * 16)
    assert Thresholds.default(1, 3).size == 10
    assert th.to_json() == {"sizeThreshold": 70, "apexThreshold": 16, "degreeThreshold": 256}


def test_classify_examples():
    small = classify_bag(G.complete(5), 5, Thresholds(10, 1, 1))
    assert small.verdict == "small" and small.verify(G.complete(5))
    c5 = classify_bag(G.cycle(5), 5, Thresholds(3, 1, 1))
    assert c5.verdict == "nearlyBipartite" and len(c5.apex) == 1 and c5.verify(G.cycle(5))
    k6 = classify_bag(G.complete(6), 6, Thresholds(3, 1, 1))
    assert k6.verdict == "neither"
    assert classify_bag(G.complete(6), 6, Thresholds(3, 4, 1)).verdict == "nearlyBipartite"


def test_classification_json_maps_to_host_labels():
    c = classify_bag(G.cycle(5), 5, Thresholds(3, 1, 1), labels=[10, 11, 12, 13, 14])
    data = c.to_json()
    assert data["verdict"] == "nearlyBipartite"
    assert set(data["apex"] + data["sideA"] + data["sideB"]) == {10, 11, 12, 13, 14}


def test_tampered_classification_does_not_verify():
    g = G.cycle(5)
    c = classify_bag(g, 5, Thresholds(3, 1, 1))
    from dataclasses import replace
    assert not replace(c, apex=(), side_a=c.side_a + c.apex).verify(g)
    assert not replace(c, thresholds=Thresholds(3, 0, 1)).verify(g)


@given(graphs(max_n=9, min_n=1), st.randoms(use_true_random=False), st.integers(0, 4), st.integers(1, 10))
@settings(max_examples=60, deadline=None)
def test_classification_is_relabeling_invariant(g, rng, apex, size):
    perm = list(range(g.n))
    rng.shuffle(perm)
    th = Thresholds(size, apex, 1)
    a = classify_bag(g, g.n, th)
    b = classify_bag(_relabel(g, perm), g.n, th)
    assert a.verdict == b.verdict and len(a.apex) == len(b.apex)
    assert a.verify(g)
