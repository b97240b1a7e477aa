"""Odd clique models: validation and exhaustive search.

An odd K_t model is a family of t disjoint vertex sets ("nodes") together
with a 0/1 coloring of their vertices such that inside every node the
bichromatic edges connect the node, and every pair of nodes is joined by at
least one monochromatic edge.  Dropping the coloring gives an ordinary K_t
model (clique minor).

A connected vertex set admits a bichromatic spanning tree under a coloring
exactly when the coloring restricted to some spanning tree is proper; for a
node that induces a bipartite graph this forces the coloring to be the
bipartition (or its flip), so such nodes have exactly two colorings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import InstanceTooLarge, PreconditionViolation
from .graph import Graph, bipartite_mask, bits, component_mask, is_bipartite, to_mask

DEFAULT_MAX_N = 14
DEFAULT_MAX_APEX = 6


class Violation(NamedTuple):
    """First invariant a certificate fails, with the offending items."""

    invariant: str
    detail: str
    items: tuple = ()

    def __str__(self):
        return f"{self.invariant}: {self.detail}"


@dataclass
class OddModel:
    nodes: tuple[frozenset[int], ...]
    coloring: dict[int, int]
    connectors: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    @property
    def t(self) -> int:
        return len(self.nodes)

    @property
    def support(self) -> frozenset[int]:
        return frozenset().union(*self.nodes) if self.nodes else frozenset()

    def to_json(self) -> dict:
        return {
            "nodes": [sorted(node) for node in self.nodes],
            "coloring": {str(v): self.coloring[v] for v in sorted(self.coloring)},
            "connectors": [[i, j, u, w] for (i, j), (u, w) in sorted(self.connectors.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OddModel":
        return cls(
            nodes=tuple(frozenset(node) for node in data["nodes"]),
            coloring={int(v): int(c) for v, c in data["coloring"].items()},
            connectors={(i, j): (u, w) for i, j, u, w in data["connectors"]},
        )

    def restrict(self, t: int) -> "OddModel":
        """The sub-model on the first ``t`` nodes."""
        keep = self.nodes[:t]
        support = frozenset().union(*keep) if keep else frozenset()
        return OddModel(
            keep,
            {v: c for v, c in self.coloring.items() if v in support},
            {k: e for k, e in self.connectors.items() if k[1] < t},
        )


def validate_odd_model(g: Graph, model: OddModel) -> Violation | None:
    """Check every invariant of an odd model; None means valid."""
    seen: dict[int, int] = {}
    for i, node in enumerate(model.nodes):
        if not node:
            return Violation("nonempty", f"node {i} is empty", (i,))
        for v in node:
            if not 0 <= v < g.n:
                return Violation("vertex-range", f"vertex {v} of node {i} not in graph", (v,))
            if v in seen:
                return Violation("disjoint", f"vertex {v} lies in nodes {seen[v]} and {i}", (v,))
            seen[v] = i
            if model.coloring.get(v) not in (0, 1):
                return Violation("coloring", f"vertex {v} has no 0/1 color", (v,))
    col = model.coloring
    for i, node in enumerate(model.nodes):
        nm = to_mask(node)
        if component_mask(g, nm & -nm, nm) != nm:
            return Violation("connected", f"node {i} does not induce a connected subgraph", tuple(sorted(node)))
        ones = to_mask(v for v in node if col[v])
        if not _bichromatic_spanning(g, nm, ones):
            return Violation("bichromatic", f"bichromatic edges of node {i} do not span it", tuple(sorted(node)))
    for i, j in itertools.combinations(range(len(model.nodes)), 2):
        edge = model.connectors.get((i, j))
        if edge is None:
            return Violation("connector", f"pair ({i}, {j}) has no connecting edge", (i, j))
        u, w = edge
        if not (0 <= u < g.n and 0 <= w < g.n and g.has_edge(u, w)):
            return Violation("connector", f"connector {edge} of pair ({i}, {j}) is not an edge", (i, j))
        if {seen.get(u), seen.get(w)} != {i, j}:
            return Violation("connector", f"connector {edge} does not join nodes {i} and {j}", (i, j))
        if col[u] != col[w]:
            return Violation("monochromatic", f"connector {edge} of pair ({i}, {j}) is bichromatic", (u, w))
    return None


def _bichromatic_spanning(g: Graph, node: int, ones: int) -> bool:
    zeros = node & ~ones
    reach = node & -node
    frontier = reach
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.mask(v) & (zeros if ones >> v & 1 else ones)
        nxt &= node & ~reach
        reach |= nxt
        frontier = nxt
    return reach == node


def _node_colorings(g: Graph, node: int) -> list[int]:
    """Every ``ones`` mask under which the bichromatic edges span ``node``."""
    root = (node & -node).bit_length() - 1
    if bipartite_mask(g, node):
        cert = is_bipartite(g, bits(node))
        side = to_mask(cert.side_a)
        if not side >> root & 1:
            side = node & ~side
        # make the root color 0: ``ones`` is the side without the root
        ones = node & ~side
        return [ones, node & ~ones]
    others = [v for v in bits(node) if v != root]
    out = []
    for pick in range(1 << len(others)):
        ones = 0
        for i, v in enumerate(others):
            if pick >> i & 1:
                ones |= 1 << v
        if _bichromatic_spanning(g, node, ones):
            out.append(ones)
    return out + [node & ~o for o in out]


def connected_sets(g: Graph, root: int, allowed: int) -> Iterator[int]:
    """Every connected vertex set containing ``root`` inside ``allowed``, each once."""
    masks = g._masks

    def rec(current: int, nbrs: int, excluded: int):
        yield current
        ext = nbrs & allowed & ~current & ~excluded
        while ext:
            low = ext & -ext
            v = low.bit_length() - 1
            yield from rec(current | low, nbrs | masks[v], excluded)
            excluded |= low
            ext ^= low

    if allowed >> root & 1:
        yield from rec(1 << root, masks[root], 0)


class _Placed(NamedTuple):
    mask: int
    ones: int
    nbr: int
    nbr_ones: int
    nbr_zeros: int


class ModelSearch:
    """Backtracking search for an (odd) K_t model.

    Nodes are placed one at a time.  Unseeded nodes come in increasing order
    of their minimum vertex, which removes the t! relabelling symmetry.
    Seeded nodes (used by the apex-restricted search) must contain a given
    vertex set with given colors.  ``nodes_visited`` counts node placements.
    """

    def __init__(self, g: Graph, t: int, parity: bool = True, support_limit: int | None = None,
                 seeds: Iterable[tuple[int, int]] = (), forbidden: int = 0):
        self.g = g
        self.t = t
        self.parity = parity
        self.support_limit = g.n if support_limit is None else support_limit
        self.seeds = list(seeds)
        self.forbidden = forbidden
        self.nodes_visited = 0
        self._color_cache: dict[int, list[int]] = {}
        self._seed_union = 0
        for s, _ in self.seeds:
            self._seed_union |= s

    def colorings(self, node: int) -> list[int]:
        if not self.parity:
            return [0]
        out = self._color_cache.get(node)
        if out is None:
            out = self._color_cache[node] = _node_colorings(self.g, node)
        return out

    def _nbr(self, m: int) -> int:
        out = 0
        for v in bits(m):
            out |= self.g._masks[v]
        return out

    def run(self) -> list[_Placed] | None:
        if self.t <= 0:
            return []
        if len(self.seeds) > self.t:
            return None
        self._placed: list[_Placed] = []
        return list(self._placed) if self._place(0, 0, -1, 0) else None

    def _place(self, i: int, used: int, last_root: int, size: int) -> bool:
        if i == self.t:
            return True
        g = self.g
        full = g.full_mask
        placed = self._placed
        if i < len(self.seeds):
            seed, seed_ones = self.seeds[i]
            other_seeds = self._seed_union & ~seed
            allowed = full & ~used & ~self.forbidden & ~other_seeds | seed
            seed_root = (seed & -seed).bit_length() - 1
            candidates = ((s, last_root) for s in connected_sets(g, seed_root, allowed) if s & seed == seed)
        else:
            candidates = self._free_candidates(used, last_root)
        for node, root in candidates:
            new_size = size + node.bit_count()
            if new_size > self.support_limit:
                continue
            nb = self._nbr(node)
            if any(not nb & p.mask for p in placed):
                continue
            new_used = used | node
            if i + 1 < self.t and not self._future_ok(nb, new_used):
                continue
            for ones in self.colorings(node):
                if i < len(self.seeds):
                    seed, seed_ones = self.seeds[i]
                    if ones & seed != seed_ones:
                        continue
                elif i == 0 and self.parity and not self.seeds and ones >> root & 1:
                    continue  # global color flip
                if self.parity:
                    zeros = node & ~ones
                    n1, n0 = self._nbr(ones), self._nbr(zeros)
                    if any(not (n1 & p.mask & p.ones or n0 & p.mask & ~p.ones) for p in placed):
                        continue
                else:
                    n1 = n0 = 0
                self.nodes_visited += 1
                placed.append(_Placed(node, ones, nb, n1, n0))
                if self._place(i + 1, new_used, root, new_size):
                    return True
                placed.pop()
        return False

    def _free_candidates(self, used: int, last_root: int):
        g = self.g
        avail = g.full_mask & ~used & ~self.forbidden & ~self._seed_union
        remaining = self.t - len(self._placed)
        for r in bits(avail >> (last_root + 1) << (last_root + 1)):
            allowed = avail >> r << r
            if allowed.bit_count() < remaining:
                break
            for s in connected_sets(g, r, allowed):
                yield s, r

    def _future_ok(self, nb_new: int, used: int) -> bool:
        avail = self.g.full_mask & ~used & ~self.forbidden | (self._seed_union & ~used)
        if not nb_new & avail:
            return False
        return all(p.nbr & avail for p in self._placed)


def _connectors(g: Graph, placed: list[_Placed], parity: bool) -> dict[tuple[int, int], tuple[int, int]]:
    out = {}
    for i, j in itertools.combinations(range(len(placed)), 2):
        a, b = placed[i], placed[j]
        best = None
        for u in bits(a.mask):
            for w in bits(g.mask(u) & b.mask):
                if not parity or (a.ones >> u & 1) == (b.ones >> w & 1):
                    best = (u, w)
                    break
            if best:
                break
        out[(i, j)] = best
    return out


def _to_model(g: Graph, placed: list[_Placed]) -> OddModel:
    coloring = {}
    for p in placed:
        for v in bits(p.mask):
            coloring[v] = p.ones >> v & 1
    return OddModel(tuple(frozenset(bits(p.mask)) for p in placed), coloring, _connectors(g, placed, True))


def _check_size(g: Graph, t: int, max_n: int) -> None:
    if t >= 4 and g.n > max_n:
        raise InstanceTooLarge(f"exhaustive model search limited to n <= {max_n} for t >= 4, got n={g.n}")


def find_odd_clique_model(g: Graph, t: int, support_limit: int | None = None,
                          max_n: int = DEFAULT_MAX_N, search: list | None = None) -> OddModel | None:
    """An odd K_t model of ``g`` or None; None is a proof of absence
    (within ``support_limit`` when one is given).

    Pass a list as ``search`` to receive the :class:`ModelSearch` object
    (for its ``nodes_visited`` counter).
    """
    if t < 1:
        raise PreconditionViolation("t must be at least 1")
    _check_size(g, t, max_n)
    engine = ModelSearch(g, t, parity=True, support_limit=support_limit)
    if search is not None:
        search.append(engine)
    if t >= 3 and is_bipartite(g).bipartite:
        return None  # every odd K_3 model contains an odd cycle
    placed = engine.run()
    return None if placed is None else _to_model(g, placed)


def find_clique_minor(g: Graph, t: int, support_limit: int | None = None,
                      max_n: int = DEFAULT_MAX_N) -> tuple[frozenset[int], ...] | None:
    """Branch sets of a K_t model of ``g`` or None."""
    if t < 1:
        raise PreconditionViolation("t must be at least 1")
    _check_size(g, t, max_n)
    placed = ModelSearch(g, t, parity=False, support_limit=support_limit).run()
    return None if placed is None else tuple(frozenset(bits(p.mask)) for p in placed)


def is_clique_model(g: Graph, nodes: Iterable[Iterable[int]]) -> bool:
    nodes = [to_mask(n) for n in nodes]
    if any(not m for m in nodes):
        return False
    total = 0
    for m in nodes:
        if total & m or component_mask(g, m & -m, m) != m:
            return False
        total |= m
    for a, b in itertools.combinations(nodes, 2):
        if not any(g.mask(v) & b for v in bits(a)):
            return False
    return True


def odd_model_exists_bipartite_apex(g: Graph, apex: Iterable[int], t: int,
                                    max_apex: int = DEFAULT_MAX_APEX) -> OddModel | None:
    """Odd K_t model search for a graph that is bipartite after deleting ``apex``.

    Branches over how the apex vertices take part in the model (unused, or
    which node they share and with which color), then completes each branch
    with a seeded search.  Nodes avoiding the apex live in a bipartite graph,
    and three of them would already form an odd K_3 there, so at most two
    nodes avoid the apex; branches with fewer than ``t - 2`` apex-bearing
    nodes are skipped.
    """
    apex = sorted(set(apex))
    if t < 1:
        raise PreconditionViolation("t must be at least 1")
    if len(apex) > max_apex:
        raise InstanceTooLarge(f"apex set limited to {max_apex} vertices")
    rest = [v for v in range(g.n) if v not in set(apex)]
    if not is_bipartite(g, rest).bipartite:
        raise PreconditionViolation("graph minus apex set is not bipartite")
    apex_mask = to_mask(apex)
    if t <= 2:
        return find_odd_clique_model(g, t, max_n=max(g.n, DEFAULT_MAX_N))
    if t - 2 > len(apex):
        return None

    def assignments(idx: int, groups: list[list[int]], colors: dict[int, int]):
        if idx == len(apex):
            yield groups, colors
            return
        v = apex[idx]
        yield from assignments(idx + 1, groups, colors)  # v unused
        first = not colors
        for c in ((0,) if first else (0, 1)):
            colors[v] = c
            for gi in range(len(groups)):
                groups[gi].append(v)
                yield from assignments(idx + 1, groups, colors)
                groups[gi].pop()
            if len(groups) < t:
                groups.append([v])
                yield from assignments(idx + 1, groups, colors)
                groups.pop()
            del colors[v]

    for groups, colors in assignments(0, [], {}):
        if len(groups) < t - 2:
            continue
        seeds = [(to_mask(gr), to_mask(v for v in gr if colors[v])) for gr in groups]
        used_apex = to_mask(v for gr in groups for v in gr)
        engine = ModelSearch(g, t, parity=True, seeds=seeds, forbidden=apex_mask & ~used_apex)
        placed = engine.run()
        if placed is not None:
            return _to_model(g, placed)
    return None
