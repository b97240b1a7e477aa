"""Seeded instance generators shared by the planar tests and the acceptance suite."""

import itertools

import numpy as np
from scipy.spatial import Delaunay

from oddminor import generators as G
from oddminor.graph import Graph, ListAssignment
from oddminor.planar import RotationEmbedding


def thomassen_instance(rng, n, sparse=False, palette=8):
    """A plane graph with lists meeting the extension hypotheses: an outer
    edge xy with distinct single colors, 3-lists on the rest of the outer
    face and 5-lists inside."""
    g, pts = (G.random_planar if sparse else G.random_triangulation)(n, rng)
    e = RotationEmbedding.from_positions(g, pts)
    outer = e.outer_face
    i = rng.randrange(len(outer))
    x, y = outer[i], outer[(i + 1) % len(outer)]
    colors = list(range(palette))
    a, b = rng.sample(colors, 2)
    lists = []
    for v in range(g.n):
        if v == x:
            lists.append({a})
        elif v == y:
            lists.append({b})
        else:
            lists.append(set(rng.sample(colors, 3 if v in outer else 5)))
    return g, e, ListAssignment(lists), x, y


def precolored_instance(rng, corners, inner_max=40, palette=7):
    """Delaunay triangulation of a triangle or square plus random inner
    points, 5-lists everywhere and a proper precoloring of the outer face."""
    corners = [(0, 0), (1, 0), (0.5, 1)] if corners == 3 else [(0, 0), (1, 0), (1, 1), (0, 1)]
    m = rng.randint(0, inner_max)
    inner = []
    while len(inner) < m:
        p = (rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98))
        if len(corners) == 3 and not (p[1] < 2 * p[0] - 0.02 and p[1] < 2 * (1 - p[0]) - 0.02):
            continue
        inner.append(p)
    pts = np.array(corners + inner)
    tri = Delaunay(pts)
    edges = {tuple(sorted((int(a), int(b)))) for s in tri.simplices for a, b in itertools.combinations(s, 2)}
    g = Graph(len(pts), edges)
    e = RotationEmbedding.from_positions(g, pts)
    lists = ListAssignment([set(rng.sample(range(palette), 5)) for _ in range(g.n)])
    face = e.outer_face
    while True:
        fc = {v: rng.choice(sorted(lists[v])) for v in face}
        if all(fc[u] != fc[v] for u, v in itertools.combinations(face, 2) if g.has_edge(u, v)):
            return g, e, lists, fc
