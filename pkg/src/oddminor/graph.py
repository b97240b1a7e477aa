"""Simple undirected graphs on contiguous integer vertices, plus the small
algorithms every other module leans on: components, bipartiteness
certificates, degeneracy, separations, a parity-aware union-find and a
parity-constrained path search.

Vertex sets are passed around either as Python sets or as int bitmasks
(bit ``v`` set means vertex ``v`` is present).  The bitmask form is what the
exhaustive searches use internally.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InstanceTooLarge, PreconditionViolation

DEFAULT_SEPARATION_LIMIT = 16
DEFAULT_PATH_SEARCH_LIMIT = 40


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """A simple undirected graph with vertices ``0..n-1``.

    Graphs are treated as immutable values: every rewrite returns a new
    instance.  Parallel edges in the input collapse; self-loops raise.
    """

    __slots__ = ("n", "_masks", "_adj", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        masks = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self.n = n
        self._masks = masks
        self._adj = [tuple(bits(m)) for m in masks]
        if labels is not None and len(labels) != n:
            raise ValueError("labels must have one entry per vertex")
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels=None) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(masks)
        g._masks = list(masks)
        g._adj = [tuple(bits(m)) for m in masks]
        g.labels = tuple(labels) if labels is not None else None
        return g

    @classmethod
    def from_networkx(cls, G) -> "Graph":
        nodes = sorted(G.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), ((index[u], index[v]) for u, v in G.edges() if u != v))

    def to_networkx(self):
        import networkx as nx

        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges())
        return G

    # -- queries -------------------------------------------------------

    @property
    def m(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def mask(self, v: int) -> int:
        return self._masks[v]

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(self._masks)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    # -- rewrites ------------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices`` with compacted ids.

        Returns the subgraph and the map from new ids to old ids.
        """
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        keep_mask = to_mask(keep)
        masks = []
        for v in keep:
            masks.append(to_mask(index[w] for w in bits(self._masks[v] & keep_mask)))
        labels = [self.labels[v] for v in keep] if self.labels is not None else None
        return Graph.from_masks(masks, labels), keep

    def remove_vertices(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = list(self._masks)
        for u, v in edges:
            masks[u] &= ~(1 << v)
            masks[v] &= ~(1 << u)
        return Graph.from_masks(masks, self.labels)

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = list(self._masks)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return Graph.from_masks(masks, self.labels)

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._masks == other._masks

    def __hash__(self):
        return hash((self.n, tuple(self._masks)))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class Coloring:
    """A vertex coloring; ``assignment[v]`` is the color of vertex ``v``."""

    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))

    @property
    def num_colors(self) -> int:
        return len(set(self.assignment))

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self):
        return len(self.assignment)

    def conflicts(self, g: Graph) -> list[tuple[int, int]]:
        return [(u, v) for u, v in g.edges() if self.assignment[u] == self.assignment[v]]

    def is_proper(self, g: Graph, palette: int | None = None) -> bool:
        """Proper on ``g``; with ``palette`` also require every color in ``range(palette)``."""
        if len(self.assignment) != g.n:
            return False
        if palette is not None and any(not 0 <= c < palette for c in self.assignment):
            return False
        return not self.conflicts(g)

    def normalized(self) -> "Coloring":
        """Relabel colors ``0, 1, ...`` in order of first appearance."""
        seen: dict[int, int] = {}
        return Coloring(tuple(seen.setdefault(c, len(seen)) for c in self.assignment))


@dataclass(frozen=True)
class ListAssignment:
    """Admissible colors per vertex."""

    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(l) for l in self.lists))

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def __len__(self):
        return len(self.lists)

    def admits(self, coloring: Coloring) -> bool:
        return len(coloring) == len(self.lists) and all(
            c in l for c, l in zip(coloring.assignment, self.lists)
        )


@dataclass(frozen=True)
class BipartiteCertificate:
    """Either a bipartition of a region or an odd cycle inside it."""

    side_a: frozenset[int] = frozenset()
    side_b: frozenset[int] = frozenset()
    odd_cycle: tuple[int, ...] | None = None

    @property
    def bipartite(self) -> bool:
        return self.odd_cycle is None

    def verify(self, g: Graph, region: Iterable[int] | None = None) -> bool:
        if self.odd_cycle is not None:
            cyc = self.odd_cycle
            if len(cyc) % 2 == 0 or len(set(cyc)) != len(cyc):
                return False
            return all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        region = set(range(g.n)) if region is None else set(region)
        if self.side_a & self.side_b or (self.side_a | self.side_b) != region:
            return False
        for side in (self.side_a, self.side_b):
            sm = to_mask(side)
            if any(g.mask(v) & sm for v in side):
                return False
        return True


@dataclass(frozen=True)
class Separation:
    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def separator(self) -> frozenset[int]:
        return self.side_a & self.side_b

    @property
    def order(self) -> int:
        return len(self.side_a & self.side_b)

    def verify(self, g: Graph) -> bool:
        if self.side_a | self.side_b != frozenset(range(g.n)):
            return False
        only_a = self.side_a - self.side_b
        only_b = self.side_b - self.side_a
        if not only_a or not only_b:
            return False
        mb = to_mask(only_b)
        return not any(g.mask(v) & mb for v in only_a)


class Separations(list):
    """A list of separations plus a flag telling whether the list is exhaustive."""

    def __init__(self, items=(), complete: bool = True):
        super().__init__(items)
        self.complete = complete


class ParityDSU:
    """Union-find where every element carries a parity relative to its root.

    ``union(a, b, p)`` records ``parity(a) xor parity(b) == p``; it returns
    False (and changes nothing) if that contradicts what is already known.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.rel = [0] * n  # parity relative to parent

    def __len__(self):
        return len(self.parent)

    def find(self, x: int) -> tuple[int, int]:
        """Return ``(root, parity of x relative to root)``."""
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress from the top down so each node's parity composes correctly
        acc = 0
        for node in reversed(path):
            acc ^= self.rel[node]
            self.rel[node] = acc
            self.parent[node] = root
        return root, (self.rel[path[0]] if path else 0)

    def relation(self, a: int, b: int) -> int | None:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra != rb:
            return None
        return pa ^ pb

    def union(self, a: int, b: int, parity: int) -> bool:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == parity
        if self.rank[ra] < self.rank[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.rel[rb] = pa ^ pb ^ parity
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def parity_union(d: ParityDSU, a: int, b: int, parity: int) -> bool:
    return d.union(a, b, parity)


# ----------------------------------------------------------------------
# traversal


def connected_components(g: Graph, region: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components of ``g[region]``, ordered by their smallest vertex."""
    todo = g.full_mask if region is None else to_mask(region)
    comps = []
    while todo:
        comp = component_mask(g, todo & -todo, todo)
        todo &= ~comp
        comps.append(frozenset(bits(comp)))
    return comps


def component_mask(g: Graph, seed: int, region: int) -> int:
    """Bitmask of everything reachable from the vertices in ``seed`` inside ``region``."""
    comp = seed & region
    frontier = comp
    masks = g._masks
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= masks[v]
        nxt &= region & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def is_connected_mask(g: Graph, region: int) -> bool:
    if not region:
        return True
    return component_mask(g, region & -region, region) == region


def is_bipartite(g: Graph, region: Iterable[int] | None = None) -> BipartiteCertificate:
    """Bipartition of ``g[region]`` or an odd cycle inside it.

    BFS in ascending vertex order; the first monochromatic edge found yields
    the cycle through the lowest common BFS ancestor of its ends.
    """
    verts = sorted(range(g.n) if region is None else set(region))
    inside = to_mask(verts)
    color: dict[int, int] = {}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for s in verts:
        if s in color:
            continue
        color[s], parent[s], depth[s] = 0, -1, 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in bits(g.mask(u) & inside):
                if w not in color:
                    color[w] = color[u] ^ 1
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return BipartiteCertificate(odd_cycle=_odd_cycle(u, w, parent, depth))
    side_a = frozenset(v for v in verts if color[v] == 0)
    return BipartiteCertificate(side_a, frozenset(verts) - side_a)


def _odd_cycle(u, w, parent, depth):
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()  # common ancestor already at the end of ``left``
    return tuple(left + right[::-1])


def bipartite_mask(g: Graph, region: int) -> bool:
    """Fast yes/no bipartiteness test on a bitmask region."""
    color = {}
    todo = region
    masks = g._masks
    while todo:
        s = (todo & -todo).bit_length() - 1
        color[s] = 0
        side = [1 << s, 0]
        frontier = 1 << s
        seen = frontier
        c = 0
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= masks[v]
            nxt &= region
            if nxt & side[c]:
                return False
            nxt &= ~seen
            c ^= 1
            side[c] |= nxt
            seen |= nxt
            frontier = nxt
        todo &= ~seen
    return True


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Repeatedly remove a minimum-degree vertex (lowest id on ties)."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    order, degeneracy = [], 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        degeneracy = max(degeneracy, deg[v])
        order.append(v)
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return order, degeneracy


# ----------------------------------------------------------------------
# separations


def iter_separator_components(g: Graph, max_order: int) -> Iterator[tuple[frozenset[int], list[frozenset[int]]]]:
    """Yield ``(S, components of g - S)`` for every S with |S| <= max_order
    whose removal leaves at least two components."""
    full = g.full_mask
    for k in range(min(max_order, g.n) + 1):
        for sep in itertools.combinations(range(g.n), k):
            rest = full & ~to_mask(sep)
            comps = []
            todo = rest
            while todo:
                c = component_mask(g, todo & -todo, rest)
                comps.append(frozenset(bits(c)))
                todo &= ~c
            if len(comps) >= 2:
                yield frozenset(sep), comps


def enumerate_separations(g: Graph, max_order: int, limit: int = DEFAULT_SEPARATION_LIMIT,
                          strict: bool = True) -> Separations:
    """All separations of order at most ``max_order``, one per unordered pair.

    Exhaustive when ``g.n <= limit``.  Larger graphs raise
    :class:`InstanceTooLarge`, unless ``strict=False``, in which case only the
    separations cut off by a single low-degree vertex are returned and the
    result is flagged incomplete.
    """
    if max_order < 0:
        raise PreconditionViolation("max_order must be non-negative")
    if g.n > limit:
        if strict:
            raise InstanceTooLarge(f"separation enumeration limited to n <= {limit}, got {g.n}")
        out = Separations(complete=False)
        everything = frozenset(range(g.n))
        for v in range(g.n):
            nb = frozenset(g.neighbors(v))
            if len(nb) <= max_order and len(nb) + 1 < g.n:
                out.append(Separation(nb | {v}, everything - {v}))
        return out
    out = Separations()
    for sep, comps in iter_separator_components(g, max_order):
        first, rest = comps[0], comps[1:]
        for pick in range(1 << len(rest)):
            if pick == (1 << len(rest)) - 1:
                continue  # B - A would be empty
            a_int = set(first)
            b_int = set()
            for i, c in enumerate(rest):
                (a_int if pick >> i & 1 else b_int).update(c)
            out.append(Separation(frozenset(a_int) | sep, frozenset(b_int) | sep))
    return out


# ----------------------------------------------------------------------
# parity paths


def find_parity_path(g: Graph, u: int, v: int, interior: Iterable[int], parity: int,
                     limit: int = DEFAULT_PATH_SEARCH_LIMIT) -> list[int] | None:
    """A simple ``u``-``v`` path whose length has the given parity and whose
    internal vertices all lie in ``interior``; None when no such path exists.

    Exhaustive DFS (neighbors in ascending order) that abandons a branch as
    soon as ``v`` is unreachable through the unvisited interior.
    """
    if u == v:
        raise PreconditionViolation("endpoints must differ")
    inner = to_mask(interior)
    if inner >> u & 1 or inner >> v & 1:
        raise PreconditionViolation("endpoints may not lie in the interior")
    if inner.bit_count() > limit:
        raise InstanceTooLarge(f"parity path search limited to {limit} interior vertices")
    parity &= 1
    masks = g._masks
    vbit = 1 << v
    path = [u]

    def reachable(x: int, free: int) -> bool:
        if masks[x] & vbit:
            return True
        comp = component_mask(g, masks[x] & free, free)
        return bool(comp and any(masks[w] & vbit for w in bits(comp)))

    def dfs(x: int, free: int) -> bool:
        length = len(path) - 1
        if masks[x] & vbit and (length + 1) % 2 == parity:
            path.append(v)
            return True
        if not reachable(x, free):
            return False
        for w in bits(masks[x] & free):
            path.append(w)
            if dfs(w, free & ~(1 << w)):
                return True
            path.pop()
        return False

    return path if dfs(u, inner) else None
