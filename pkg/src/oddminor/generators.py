"""Graph families and seeded random instances used by tests, demos and sweeps."""

from __future__ import annotations

import random
import shutil
import subprocess
from typing import Iterator

import networkx as nx
import numpy as np

from .errors import InstanceTooLarge
from .graph import Graph, is_connected_mask


def complete(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides are ``0..a-1`` and ``a..a+b-1``."""
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def wheel(rim: int) -> Graph:
    """Hub 0 joined to every vertex of the rim cycle ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph(rim + 1, edges)


def grid(rows: int, cols: int) -> Graph:
    def idx(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    return Graph(rows * cols, edges)


def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def octahedron() -> Graph:
    return Graph.from_networkx(nx.octahedral_graph())


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """G(n, p) conditioned on connectivity, by rejection (a random spanning
    tree is added after 50 failed draws)."""
    for _ in range(50):
        g = random_graph(n, p, rng)
        if is_connected_mask(g, g.full_mask):
            return g
    g = random_graph(n, p, rng)
    order = list(range(n))
    rng.shuffle(order)
    tree = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    return g.with_edges(tree)


def all_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """Every graph on ``n`` vertices up to isomorphism.

    Uses the networkx atlas for ``n <= 7`` and nauty's ``geng`` (if it is on
    PATH) beyond that.
    """
    if n <= 7:
        for G in nx.graph_atlas_g():
            if G.number_of_nodes() == n and (not connected or n == 0 or nx.is_connected(G)):
                yield Graph.from_networkx(G)
        return
    geng = shutil.which("geng")
    if geng is None:
        raise InstanceTooLarge(f"enumerating all graphs on {n} vertices needs nauty's geng on PATH")
    args = [geng, "-q"] + (["-c"] if connected else []) + [str(n)]
    with subprocess.Popen(args, stdout=subprocess.PIPE, text=True) as proc:
        for line in proc.stdout:
            yield Graph.from_networkx(nx.from_graph6_bytes(line.strip().encode()))


def random_triangulation(n: int, rng: random.Random) -> tuple[Graph, np.ndarray]:
    """Delaunay triangulation of ``n`` uniform points in the unit square.

    Returns the graph and the point coordinates (which fix a planar
    embedding).  The outer face is the convex hull.
    """
    from scipy.spatial import Delaunay

    if n < 3:
        raise ValueError("need at least 3 points")
    seed = rng.randrange(2**32)
    pts = np.random.default_rng(seed).random((n, 2))
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((min(u, v), max(u, v)))
    return Graph(n, ((int(u), int(v)) for u, v in edges)), pts


def random_planar(n: int, rng: random.Random, keep: float = 0.7) -> tuple[Graph, np.ndarray]:
    """A connected spanning subgraph of a random triangulation.

    Each non-tree edge survives with probability ``keep``; a spanning tree
    (minimum under random edge weights) is always kept so the result stays
    connected.
    """
    tri, pts = random_triangulation(n, rng)
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_weighted_edges_from((u, v, rng.random()) for u, v in tri.edges())
    tree = set(tuple(sorted(e)) for e in nx.minimum_spanning_tree(G).edges())
    kept = [e for e in tri.edges() if e in tree or rng.random() < keep]
    return Graph(n, kept), pts
