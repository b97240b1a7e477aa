"""Chromatic number by dynamic programming over a nice tree decomposition.

A state is the partition of the current bag into color classes, written as
a label tuple over the sorted bag with labels renamed by first appearance.
Colors are interchangeable inside a subtree, so the partition is all that
matters for k-colorability.
"""

from __future__ import annotations

from ..errors import StateBudgetExceeded
from ..graph import Coloring, Graph
from .decomposition import NiceNode, TreeDecomposition, nice_form

DEFAULT_STATE_BUDGET = 10**7


def _canon(labels) -> tuple[int, ...]:
    rename: dict[int, int] = {}
    return tuple(rename.setdefault(x, len(rename)) for x in labels)


def _tables(g: Graph, nodes: list[NiceNode], k: int, budget: int):
    """Per nice node: dict state -> back-pointer (child state(s))."""
    tables: list[dict] = []
    total = 0
    for node in nodes:
        table: dict = {}
        if node.kind == "leaf":
            table[()] = None
        elif node.kind == "introduce":
            v = node.vertex
            pos = node.bag.index(v)
            nb_pos = [i for i, w in enumerate(node.bag) if w != v and g.has_edge(v, w)]
            for s in tables[node.children[0]]:
                used = max(s, default=-1) + 1
                for c in range(min(used + 1, k)):
                    labels = s[:pos] + (c,) + s[pos:]
                    if any(labels[i] == c for i in nb_pos):
                        continue
                    table.setdefault(_canon(labels), s)
        elif node.kind == "forget":
            child = nodes[node.children[0]]
            pos = child.bag.index(node.vertex)
            for s in tables[node.children[0]]:
                table.setdefault(_canon(s[:pos] + s[pos + 1:]), s)
        else:  # join
            left, right = (tables[c] for c in node.children)
            for s in left:
                if s in right:
                    table[s] = s
        total += len(table)
        if total > budget:
            raise StateBudgetExceeded(budget, f"coloring DP exceeded {budget} states")
        tables.append(table)
    return tables


def _witness(nodes: list[NiceNode], tables, k: int, n: int) -> list[int]:
    color = [-1] * n
    # top-down: each nice node receives the state its parent chose for it
    chosen: dict[int, tuple] = {len(nodes) - 1: ()}
    for idx in range(len(nodes) - 1, -1, -1):
        node = nodes[idx]
        state = chosen[idx]
        back = tables[idx][state]
        if node.kind == "leaf":
            continue
        if node.kind == "join":
            for c in node.children:
                chosen[c] = state
            continue
        child_idx = node.children[0]
        chosen[child_idx] = back
        if node.kind == "forget":
            child = nodes[child_idx]
            pos = child.bag.index(node.vertex)
            label = back[pos]
            mates = [child.bag[i] for i, x in enumerate(back) if x == label and i != pos]
            if mates:
                color[node.vertex] = color[mates[0]]
            else:
                taken = {color[w] for w in node.bag}
                color[node.vertex] = next(c for c in range(k) if c not in taken)
    return color


def k_colorable(g: Graph, d: TreeDecomposition, k: int, budget: int = DEFAULT_STATE_BUDGET,
                nodes: list[NiceNode] | None = None) -> Coloring | None:
    if g.n == 0:
        return Coloring([])
    if k <= 0:
        return None
    nodes = nodes if nodes is not None else nice_form(d)
    tables = _tables(g, nodes, k, budget)
    if () not in tables[-1]:
        return None
    return Coloring(_witness(nodes, tables, k, g.n))


def chromatic_number_dp(g: Graph, d: TreeDecomposition, k_max: int,
                        budget: int = DEFAULT_STATE_BUDGET) -> tuple[int, Coloring] | None:
    """Smallest k <= k_max with a proper k-coloring, plus a witness; None if
    more than k_max colors are needed."""
    if g.n == 0:
        return 0, Coloring([])
    nodes = nice_form(d)
    start = 1 if g.m == 0 else 2
    for k in range(start, k_max + 1):
        col = k_colorable(g, d, k, budget, nodes)
        if col is not None:
            return k, col
    return None
