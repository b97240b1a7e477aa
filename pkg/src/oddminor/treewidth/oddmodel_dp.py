"""Odd K_k model containment by dynamic programming over a nice tree
decomposition.

State, for the current bag (sorted):

* ``labels``: per bag vertex, -1 if unused in the model, else
  ``2*node + color``.  Node indices are renamed by first appearance in the
  bag and colors are flipped globally so the first labeled vertex has color
  0; flipping every color maps models to models.
* ``classes``: per labeled bag vertex, its class in the bichromatic
  connectivity partition of its node (restricted to processed vertices);
  -1 for unused vertices.
* ``pairs``: bitmask over pairs of active nodes that already have a
  monochromatic connector.
* ``done``: number of finished nodes (all their vertices forgotten).

A node may finish only when no node is still untouched and it has a
connector to every active node; finished nodes never interact again, so
their identities are dropped.
"""

from __future__ import annotations

from typing import NamedTuple

from ..errors import StateBudgetExceeded
from ..graph import Graph
from .coloring import DEFAULT_STATE_BUDGET
from .decomposition import NiceNode, TreeDecomposition, nice_form


class DPVerdict(NamedTuple):
    found: bool
    states: int

    @property
    def verdict(self) -> str:
        return "found" if self.found else "absent"


def _pair_bit(i: int, j: int, k: int) -> int:
    if i > j:
        i, j = j, i
    return 1 << (i * k + j)


def _canon(labels, classes, pairs, done, k):
    flip = 0
    for x in labels:
        if x >= 0:
            flip = x & 1
            break
    node_map: dict[int, int] = {}
    class_map: dict[int, int] = {}
    new_labels = []
    new_classes = []
    for x, c in zip(labels, classes):
        if x < 0:
            new_labels.append(-1)
            new_classes.append(-1)
            continue
        node = node_map.setdefault(x >> 1, len(node_map))
        new_labels.append(2 * node + ((x & 1) ^ flip))
        new_classes.append(class_map.setdefault(c, len(class_map)))
    new_pairs = 0
    if pairs:
        for a, na in node_map.items():
            for b, nb in node_map.items():
                if a < b and pairs & _pair_bit(a, b, k):
                    new_pairs |= _pair_bit(na, nb, k)
    return tuple(new_labels), tuple(new_classes), new_pairs, done


def _active(labels) -> int:
    return len({x >> 1 for x in labels if x >= 0})


def _introduce(g: Graph, node: NiceNode, state, k: int):
    labels, classes, pairs, done = state
    v = node.bag.index(node.vertex)
    vertex = node.vertex
    others = [i for i in range(len(node.bag)) if i != v]
    yield _canon(labels[:v] + (-1,) + labels[v:], classes[:v] + (-1,) + classes[v:], pairs, done, k)
    active = _active(labels)
    fresh_class = max(classes, default=-1) + 1
    options = [(i, c) for i in range(active) for c in (0, 1)]
    if active + done < k:
        options += [(active, 0), (active, 1)]
    nb = [i for i in others if g.has_edge(vertex, node.bag[i])]
    for node_id, color in options:
        new_labels = list(labels[:v] + (2 * node_id + color,) + labels[v:])
        new_classes = list(classes[:v] + (fresh_class,) + classes[v:])
        new_pairs = pairs
        for i in nb:
            x = new_labels[i]
            if x < 0:
                continue
            if x >> 1 == node_id:
                if (x & 1) != color:
                    old = new_classes[i]
                    mine = new_classes[v]
                    if old != mine:
                        new_classes = [mine if c == old else c for c in new_classes]
            elif (x & 1) == color:
                new_pairs |= _pair_bit(x >> 1, node_id, k)
        yield _canon(new_labels, new_classes, new_pairs, done, k)


def _forget(child: NiceNode, node: NiceNode, state, k: int):
    labels, classes, pairs, done = state
    v = child.bag.index(node.vertex)
    x = labels[v]
    rest_labels = labels[:v] + labels[v + 1:]
    rest_classes = classes[:v] + classes[v + 1:]
    if x < 0:
        return _canon(rest_labels, rest_classes, pairs, done, k)
    node_id = x >> 1
    if classes[v] in rest_classes:
        return _canon(rest_labels, rest_classes, pairs, done, k)
    if any(y >= 0 and y >> 1 == node_id for y in rest_labels):
        return None  # this class can no longer reach the rest of its node
    active = _active(labels)
    if active + done != k:
        return None
    for other in {y >> 1 for y in rest_labels if y >= 0}:
        if not pairs & _pair_bit(node_id, other, k):
            return None
    return _canon(rest_labels, rest_classes, pairs, done + 1, k)


def _join(left, right, k: int):
    labels, c1, p1, d1 = left
    _, c2, p2, d2 = right
    if _active(labels) + d1 + d2 > k:
        return None
    # merge the two connectivity partitions
    parent: dict[tuple, tuple] = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for a, b in zip(c1, c2):
        if a >= 0:
            ra, rb = find((0, a)), find((1, b))
            if ra != rb:
                parent[ra] = rb
    roots: dict[tuple, int] = {}
    merged = [-1 if a < 0 else roots.setdefault(find((0, a)), len(roots)) for a in c1]
    return _canon(labels, merged, p1 | p2, d1 + d2, k)


def odd_model_dp(g: Graph, d: TreeDecomposition, k: int,
                 budget: int = DEFAULT_STATE_BUDGET) -> DPVerdict:
    """Does ``g`` contain an odd K_k model?  ``d`` must be a valid tree
    decomposition of ``g``."""
    if k <= 0:
        return DPVerdict(True, 0)
    if k > g.n:
        return DPVerdict(False, 0)
    nodes = nice_form(d)
    tables: list[set] = []
    total = 0
    for node in nodes:
        table: set = set()
        if node.kind == "leaf":
            table.add(((), (), 0, 0))
        elif node.kind == "introduce":
            for s in tables[node.children[0]]:
                table.update(_introduce(g, node, s, k))
        elif node.kind == "forget":
            child = nodes[node.children[0]]
            for s in tables[node.children[0]]:
                out = _forget(child, node, s, k)
                if out is not None:
                    table.add(out)
        else:
            left, right = (tables[c] for c in node.children)
            by_labels: dict[tuple, list] = {}
            for s in right:
                by_labels.setdefault(s[0], []).append(s)
            for s in left:
                for r in by_labels.get(s[0], ()):
                    out = _join(s, r, k)
                    if out is not None:
                        table.add(out)
        for c in node.children:
            tables[c] = set()  # children are consumed exactly once
        total += len(table)
        if total > budget:
            raise StateBudgetExceeded(budget, f"odd-model DP exceeded {budget} states")
        tables.append(table)
        if not table:
            return DPVerdict(False, total)
    return DPVerdict(((), (), 0, k) in tables[-1], total)
