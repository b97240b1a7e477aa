"""Tree decompositions: container, validation, exact and heuristic
construction, and conversion to nice form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from ..errors import InstanceTooLarge
from ..graph import Graph, bits
from ..oddmodel import Violation

DEFAULT_EXACT_LIMIT = 20


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]  # -1 marks the root

    def __init__(self, bags: Sequence, parent: Sequence[int]):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "parent", tuple(parent))
        if len(self.bags) != len(self.parent):
            raise ValueError("bags and parent must have equal length")

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def root(self) -> int:
        return self.parent.index(-1)

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p >= 0:
                out[p].append(i)
        return out

    def degree(self, i: int) -> int:
        return len(self.children()[i]) + (self.parent[i] >= 0)

    def to_json(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags], "parent": list(self.parent), "width": self.width}

    @classmethod
    def from_json(cls, data: dict) -> "TreeDecomposition":
        d = cls(data["bags"], data["parent"])
        if "width" in data and data["width"] != d.width:
            raise ValueError(f"declared width {data['width']} but bags give {d.width}")
        return d


def _tree_violation(d: TreeDecomposition) -> Violation | None:
    roots = [i for i, p in enumerate(d.parent) if p == -1]
    if len(roots) != 1:
        return Violation("tree", f"expected one root, found {len(roots)}", tuple(roots))
    for i, p in enumerate(d.parent):
        if p != -1 and not 0 <= p < len(d.bags):
            return Violation("tree", f"bag {i} has parent {p} out of range", (i,))
    for i in range(len(d.bags)):
        seen = set()
        x = i
        while x != -1:
            if x in seen:
                return Violation("tree", f"parent pointers from bag {i} form a cycle", (i,))
            seen.add(x)
            x = d.parent[x]
    return None


def validate_decomposition(g: Graph, d: TreeDecomposition) -> Violation | None:
    """None if ``d`` is a tree decomposition of ``g``, else the first problem."""
    if not d.bags:
        if g.n:
            return Violation("tree", "no bags", ())
        return None
    bad = _tree_violation(d)
    if bad:
        return bad
    for i, b in enumerate(d.bags):
        stray = sorted(v for v in b if not 0 <= v < g.n)
        if stray:
            return Violation("vertex-range", f"bag {i} holds unknown vertices {stray}", tuple(stray))
    covered = set().union(*d.bags)
    missing = sorted(set(range(g.n)) - covered)
    if missing:
        return Violation("vertex-cover", f"vertex {missing[0]} is in no bag", (missing[0],))
    for u, v in g.edges():
        if not any(u in b and v in b for b in d.bags):
            return Violation("edge-cover", f"edge ({u}, {v}) is in no bag", (u, v))
    for v in range(g.n):
        holding = [i for i, b in enumerate(d.bags) if v in b]
        # the bags holding v form a subtree iff exactly one of them has its
        # parent outside the set
        tops = [i for i in holding if d.parent[i] == -1 or v not in d.bags[d.parent[i]]]
        if len(tops) != 1:
            return Violation("connectivity", f"bags holding vertex {v} are not connected", (v,))
    return None


# ----------------------------------------------------------------------
# elimination orders


def _eliminate(adj: list[int], v: int) -> list[int]:
    nb = adj[v]
    out = list(adj)
    for w in bits(nb):
        out[w] = (out[w] | nb) & ~(1 << w) & ~(1 << v)
    out[v] = 0
    return out


def _fill_in(adj: list[int], v: int) -> int:
    nbs = list(bits(adj[v]))
    missing = 0
    for i, a in enumerate(nbs):
        missing += len([b for b in nbs[i + 1:] if not adj[a] >> b & 1])
    return missing


def min_fill_order(g: Graph) -> list[int]:
    adj = list(g.masks)
    alive = set(range(g.n))
    order = []
    while alive:
        v = min(alive, key=lambda x: (_fill_in(adj, x), adj[x].bit_count(), x))
        order.append(v)
        adj = _eliminate(adj, v)
        alive.remove(v)
    return order


def decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """The standard decomposition of an elimination order: one bag per
    vertex (itself plus its later neighbors in the filled graph)."""
    if g.n == 0:
        return TreeDecomposition([()], [-1])
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.masks)
    bags, later = [], []
    for v in order:
        nb = adj[v]
        bags.append(frozenset([v, *bits(nb)]))
        later.append(nb)
        adj = _eliminate(adj, v)
    parent = []
    for i, v in enumerate(order):
        if later[i]:
            parent.append(min(pos[w] for w in bits(later[i])))
        else:
            parent.append(-1)
    # several roots when g is disconnected: chain them under the last one
    roots = [i for i, p in enumerate(parent) if p == -1]
    for r in roots[:-1]:
        parent[r] = roots[-1]
    return TreeDecomposition(bags, parent)


def heuristic_decomposition(g: Graph) -> TreeDecomposition:
    """Min-fill elimination; an upper bound on treewidth."""
    return decomposition_from_order(g, min_fill_order(g))


def order_width(g: Graph, order: Sequence[int]) -> int:
    adj = list(g.masks)
    width = -1 if g.n == 0 else 0
    for v in order:
        width = max(width, adj[v].bit_count())
        adj = _eliminate(adj, v)
    return width


def minor_min_width(adj: list[int], alive: int) -> int:
    """Lower bound: repeatedly contract a minimum-degree vertex into its
    least-degree neighbor, recording the largest minimum degree seen."""
    adj = [a & alive for a in adj]
    lb = 0
    while alive:
        v = min(bits(alive), key=lambda x: (adj[x].bit_count(), x))
        d = adj[v].bit_count()
        lb = max(lb, d)
        if d == 0:
            alive &= ~(1 << v)
            continue
        u = min(bits(adj[v]), key=lambda x: (adj[x].bit_count(), x))
        merged = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
        for w in bits(adj[v]):
            adj[w] &= ~(1 << v)
        for w in bits(merged):
            adj[w] |= 1 << u
        adj[u] = merged
        adj[v] = 0
        alive &= ~(1 << v)
    return lb


class _TreewidthSearch:
    def __init__(self, g: Graph):
        self.g = g
        self.best_order = min_fill_order(g)
        self.best = order_width(g, self.best_order)
        self.seen: dict[int, int] = {}

    def run(self):
        g = self.g
        full = g.full_mask
        if g.n and self.best > minor_min_width(list(g.masks), full):
            self._dfs(list(g.masks), full, 0, [])
        return self.best, self.best_order

    def _dfs(self, adj, alive, width, order):
        remaining = alive.bit_count()
        if remaining - 1 <= width:
            if width < self.best:
                self.best = width
                self.best_order = order + list(bits(alive))
            return
        prev = self.seen.get(alive)
        if prev is not None and prev <= width:
            return
        self.seen[alive] = width
        if max(width, minor_min_width(adj, alive)) >= self.best:
            return
        # a simplicial vertex can always be eliminated first
        for v in bits(alive):
            nb = adj[v]
            if _fill_in(adj, v) == 0:
                self._dfs(_eliminate(adj, v), alive & ~(1 << v), max(width, nb.bit_count()), order + [v])
                return
        for v in sorted(bits(alive), key=lambda x: (adj[x].bit_count(), x)):
            w = max(width, adj[v].bit_count())
            if w >= self.best:
                continue
            self._dfs(_eliminate(adj, v), alive & ~(1 << v), w, order + [v])


def exact_treewidth(g: Graph, limit: int = DEFAULT_EXACT_LIMIT) -> tuple[int, TreeDecomposition]:
    """Treewidth by branch and bound over elimination orders."""
    if g.n > limit:
        raise InstanceTooLarge(f"exact treewidth is limited to {limit} vertices, got {g.n}")
    width, order = _TreewidthSearch(g).run()
    d = decomposition_from_order(g, order)
    return d.width, d


# ----------------------------------------------------------------------
# nice form


class NiceNode(NamedTuple):
    kind: str  # leaf | introduce | forget | join
    bag: tuple[int, ...]  # sorted
    vertex: int  # introduced/forgotten vertex, -1 otherwise
    children: tuple[int, ...]


def nice_form(d: TreeDecomposition) -> list[NiceNode]:
    """Nice decomposition as a list in bottom-up order; the last node is the
    root and has an empty bag.  Leaves have empty bags too."""
    nodes: list[NiceNode] = []
    kids = d.children()

    def add(kind, bag, vertex, children):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    def walk(cur: int, frm: frozenset, to: frozenset) -> int:
        bag = set(frm)
        for v in sorted(frm - to):
            bag.discard(v)
            cur = add("forget", bag, v, [cur])
        for v in sorted(to - frm):
            bag.add(v)
            cur = add("introduce", bag, v, [cur])
        return cur

    # post-order without recursion
    built: dict[int, int] = {}
    stack = [(d.root, False)]
    while stack:
        i, expanded = stack.pop()
        if not expanded:
            stack.append((i, True))
            for c in reversed(kids[i]):
                stack.append((c, False))
            continue
        bag = d.bags[i]
        subs = [walk(built[c], d.bags[c], bag) for c in kids[i]]
        if not subs:
            cur = walk(add("leaf", (), -1, []), frozenset(), bag)
        else:
            cur = subs[0]
            for s in subs[1:]:
                cur = add("join", bag, -1, [cur, s])
        built[i] = cur
    walk(built[d.root], d.bags[d.root], frozenset())
    return nodes
