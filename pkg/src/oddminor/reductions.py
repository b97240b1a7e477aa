"""Odd-minor operations as graph rewrites, the three automatic reduction
rules, and lifting of colorings back through a recorded trace.

An odd-minor operation deletes some edges and then contracts every edge of
an edge cut at once.  A reduction is such a rewrite (vertex deletion counts,
since it only removes structure) for which every (t-1)-coloring of the
result extends to the input graph.  Each :class:`ReductionStep` carries the
data its lifting rule needs, so lifting works from the JSON form alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import EmptyCut, LiftingFailure, PreconditionViolation, UnknownEdge
from .graph import (Coloring, Graph, ParityDSU, bipartite_mask, bits, component_mask, is_bipartite,
                    iter_separator_components, to_mask)

DELETE_EDGES = "deleteEdges"
CONTRACT_CUT = "contractCut"
LOW_DEGREE = "removeLowDegreeVertex"
INDEPENDENT_FAN = "independentFan"
BIPARTITE_SIDE = "removeBipartiteSide"


@dataclass
class ReductionStep:
    kind: str
    payload: dict
    id_map: tuple[tuple[int, ...], ...]  # post vertex -> pre vertices it stands for
    pre: Graph | None = None
    post: Graph | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "payload": self.payload, "idMap": [list(g) for g in self.id_map]}

    @classmethod
    def from_json(cls, data: dict) -> "ReductionStep":
        return cls(data["kind"], data["payload"], tuple(tuple(g) for g in data["idMap"]))


@dataclass
class ReductionTrace:
    original: Graph
    t: int
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def reduced(self) -> Graph:
        return self.steps[-1].post if self.steps else self.original

    @property
    def palette(self) -> int:
        return self.t - 1

    def replay(self) -> Graph:
        """Re-apply every step from its payload; raise if anything disagrees
        with the recorded graphs or id maps."""
        g = self.original
        for i, step in enumerate(self.steps):
            post, id_map = apply_step(g, step.kind, step.payload)
            if id_map != step.id_map:
                raise ValueError(f"step {i} ({step.kind}): id map does not replay")
            if step.post is not None and post != step.post:
                raise ValueError(f"step {i} ({step.kind}): graph does not replay")
            g = post
        return g

    def to_json(self) -> dict:
        return {"t": self.t, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, original: Graph, data: dict) -> "ReductionTrace":
        trace = cls(original, data["t"])
        g = original
        for raw in data["steps"]:
            step = ReductionStep.from_json(raw)
            step.pre = g
            step.post, _ = apply_step(g, step.kind, step.payload)
            g = step.post
            trace.steps.append(step)
        return trace


# ----------------------------------------------------------------------
# primitive rewrites


def _contract_groups(g: Graph, groups: Iterable[Iterable[int]]) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """Merge each group into one vertex; loops and parallel edges vanish."""
    owner = list(range(g.n))
    for grp in groups:
        grp = sorted(grp)
        for v in grp:
            owner[v] = grp[0]
    reps = sorted(set(owner))
    index = {r: i for i, r in enumerate(reps)}
    members: list[list[int]] = [[] for _ in reps]
    for v in range(g.n):
        members[index[owner[v]]].append(v)
    edges = set()
    for u, v in g.edges():
        a, b = index[owner[u]], index[owner[v]]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph(len(reps), edges), tuple(tuple(m) for m in members)


def _cut_groups(g: Graph, side: Iterable[int]) -> list[list[int]]:
    side_mask = to_mask(side)
    dsu = ParityDSU(g.n)
    cut = [(u, v) for u, v in g.edges() if (side_mask >> u & 1) != (side_mask >> v & 1)]
    if not cut:
        raise EmptyCut("the edge cut of the given side is empty")
    for u, v in cut:
        dsu.union(u, v, 0)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(dsu.find(v)[0], []).append(v)
    return [grp for grp in groups.values() if len(grp) > 1]


def apply_step(g: Graph, kind: str, payload: dict) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """The rewrite a step describes; returns the new graph and its id map."""
    if kind == DELETE_EDGES:
        return g.without_edges(map(tuple, payload["edges"])), tuple((v,) for v in range(g.n))
    if kind == CONTRACT_CUT:
        return _contract_groups(g, _cut_groups(g, payload["side"]))
    if kind in (LOW_DEGREE, BIPARTITE_SIDE):
        removed = [payload["vertex"]] if kind == LOW_DEGREE else payload["removed"]
        post, keep = g.remove_vertices(removed)
        return post, tuple((v,) for v in keep)
    if kind == INDEPENDENT_FAN:
        v = payload["center"]
        g1 = g.without_edges((v, w) for w in payload["deletedNeighbors"])
        return _contract_groups(g1, [[v] + list(payload["merged"])])
    raise ValueError(f"unknown step kind {kind!r}")


def _make_step(g: Graph, kind: str, payload: dict) -> ReductionStep:
    post, id_map = apply_step(g, kind, payload)
    return ReductionStep(kind, payload, id_map, g, post)


def delete_edges_step(g: Graph, edges: Iterable[tuple[int, int]]) -> ReductionStep:
    edges = sorted({(min(u, v), max(u, v)) for u, v in edges})
    for u, v in edges:
        if not (0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
            raise UnknownEdge(f"({u}, {v}) is not an edge")
    return _make_step(g, DELETE_EDGES, {"edges": [list(e) for e in edges]})


def contract_cut_step(g: Graph, side: Iterable[int]) -> ReductionStep:
    side = sorted(set(side))
    if not side or len(side) == g.n:
        raise EmptyCut("side must be a nonempty proper vertex subset")
    return _make_step(g, CONTRACT_CUT, {"side": side})


def op_delete_edges(g: Graph, edges: Iterable[tuple[int, int]], record: list | None = None) -> Graph:
    step = delete_edges_step(g, edges)
    if record is not None:
        record.append(step)
    return step.post


def op_contract_cut(g: Graph, side: Iterable[int], record: list | None = None) -> Graph:
    step = contract_cut_step(g, side)
    if record is not None:
        record.append(step)
    return step.post


def add_edge_via_odd_path(g: Graph, path: list[int]) -> list[ReductionStep]:
    """Turn an odd path ``u ... v`` into the single edge ``uv``.

    Deletes every other edge at the path's interior vertices, then contracts
    the cut around the odd-position interior vertices, which merges
    ``path[0..-2]`` into ``u`` and leaves one edge to ``v``.
    """
    if len(path) < 2 or (len(path) - 1) % 2 != 1:
        raise PreconditionViolation("path must have odd length")
    return _collapse_path(g, path)


def identify_via_even_path(g: Graph, path: list[int]) -> list[ReductionStep]:
    """Identify the ends of an even path ``u ... v`` (``uv`` not an edge)."""
    if len(path) < 3 or (len(path) - 1) % 2 != 0:
        raise PreconditionViolation("path must have even positive length")
    if g.has_edge(path[0], path[-1]):
        raise PreconditionViolation("ends of the path must be non-adjacent")
    return _collapse_path(g, path)


def _collapse_path(g: Graph, path: list[int]) -> list[ReductionStep]:
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise UnknownEdge(f"({a}, {b}) is not an edge")
    interior = path[1:-1]
    on_path = {(min(a, b), max(a, b)) for a, b in zip(path, path[1:])}
    extra = sorted({(min(x, w), max(x, w)) for x in interior for w in g.neighbors(x)} - on_path)
    steps = []
    if extra:
        steps.append(delete_edges_step(g, extra))
        g = steps[-1].post
    steps.append(contract_cut_step(g, path[1:-1:2]))
    return steps


# ----------------------------------------------------------------------
# reduction rules


def reduce_low_degree(g: Graph, t: int) -> ReductionStep | None:
    """Remove the lowest vertex of degree at most t-2."""
    if t < 2:
        raise PreconditionViolation("t must be at least 2")
    for v in range(g.n):
        if g.degree(v) <= t - 2:
            return _make_step(g, LOW_DEGREE, {"vertex": v, "neighbors": list(g.neighbors(v))})
    return None


def _independent_subset(g: Graph, candidates: tuple[int, ...], size: int) -> tuple[int, ...] | None:
    """Lexicographically first independent ``size``-subset of ``candidates``."""
    cand_mask = to_mask(candidates)

    def rec(start: int, chosen: list[int], blocked: int):
        if len(chosen) == size:
            return tuple(chosen)
        for i in range(start, len(candidates)):
            if len(candidates) - i < size - len(chosen):
                break
            v = candidates[i]
            if blocked >> v & 1:
                continue
            chosen.append(v)
            found = rec(i + 1, chosen, blocked | g.mask(v))
            if found:
                return found
            chosen.pop()
        return None

    if size <= 0:
        return ()
    return rec(0, [], 0)


def fan_configuration(g: Graph, v: int, t: int) -> tuple[int, ...] | None:
    """An independent set of l+1 neighbors of ``v`` where deg(v) = t-2+l, l >= 1."""
    extra = g.degree(v) - (t - 2)
    if extra < 1:
        return None
    return _independent_subset(g, g.neighbors(v), extra + 1)


def reduce_independent_fan(g: Graph, t: int) -> ReductionStep | None:
    """Collapse a vertex with an independent (l+1)-set in its neighborhood.

    Keeps only the edges from ``v`` to the independent set and contracts
    that star.  Lifting colors the set like the merged vertex, after which
    ``v`` sees at most t-2 colors.
    """
    if t < 2:
        raise PreconditionViolation("t must be at least 2")
    for v in range(g.n):
        indep = fan_configuration(g, v, t)
        if indep is not None:
            rest = [w for w in g.neighbors(v) if w not in indep]
            return _make_step(g, INDEPENDENT_FAN, {
                "center": v,
                "merged": list(indep),
                "deletedNeighbors": rest,
                "neighbors": list(g.neighbors(v)),
            })
    return None


def bipartite_side_candidates(g: Graph, t: int):
    """Yield ``(interior, boundary)`` pairs the bipartite-side rule accepts.

    ``interior`` is a component of ``g - boundary`` whose neighborhood is
    exactly ``boundary``; it must induce a bipartite graph, something must
    remain outside ``interior ∪ boundary``, and either the boundary has at
    most t-3 vertices, or it has t-2 and no interior vertex sees all of it.
    """
    full = g.full_mask
    for sep, comps in iter_separator_components(g, t - 2):
        sep_mask = to_mask(sep)
        for comp in comps:
            cm = to_mask(comp)
            nb = 0
            for v in comp:
                nb |= g.mask(v)
            nb &= ~cm
            if nb != sep_mask:
                continue
            if not full & ~cm & ~sep_mask:
                continue
            if not bipartite_mask(g, cm):
                continue
            order = len(sep)
            if order == t - 2 and any(g.mask(v) & sep_mask == sep_mask for v in comp):
                continue
            yield comp, sep


def reduce_bipartite_side(g: Graph, t: int) -> ReductionStep | None:
    """Delete the bipartite interior of a small separation."""
    if t < 4:
        return None
    for comp, sep in bipartite_side_candidates(g, t):
        cert = is_bipartite(g, comp)
        adjacency = {str(v): sorted(w for w in g.neighbors(v) if w in sep) for v in sorted(comp)}
        return _make_step(g, BIPARTITE_SIDE, {
            "removed": sorted(comp),
            "boundary": sorted(sep),
            "sideOne": sorted(cert.side_a),
            "sideTwo": sorted(cert.side_b),
            "boundaryAdjacency": adjacency,
        })
    return None


RULES = (reduce_low_degree, reduce_independent_fan, reduce_bipartite_side)


def reduce_to_fixpoint(g: Graph, t: int) -> ReductionTrace:
    """Apply the rules until none fires.

    After every successful step the rules are retried from the first one
    (low degree, then fan, then bipartite side).  Each step removes at least
    one vertex, so this terminates.
    """
    if t < 2:
        raise PreconditionViolation("t must be at least 2")
    trace = ReductionTrace(g, t)
    current = g
    while True:
        for rule in RULES:
            step = rule(current, t)
            if step is not None:
                trace.steps.append(step)
                current = step.post
                break
        else:
            return trace


def is_fixpoint(g: Graph, t: int) -> bool:
    return all(rule(g, t) is None for rule in RULES)


# ----------------------------------------------------------------------
# lifting


def _smallest_free(palette: int, used: set[int]) -> int:
    for c in range(palette):
        if c not in used:
            return c
    raise LiftingFailure("no free color")


def lift_step(step: ReductionStep, coloring: list[int], palette: int) -> list[int]:
    """Lift a coloring of ``step.post`` to ``step.pre``."""
    n_pre = sum(len(g) for g in step.id_map)
    kind, pay = step.kind, step.payload
    if kind == LOW_DEGREE:
        n_pre += 1
    elif kind == BIPARTITE_SIDE:
        n_pre += len(pay["removed"])
    out: list[int | None] = [None] * n_pre
    for post_v, group in enumerate(step.id_map):
        for v in group:
            out[v] = coloring[post_v]

    if kind == LOW_DEGREE:
        v = pay["vertex"]
        out[v] = _smallest_free(palette, {out[w] for w in pay["neighbors"]})
    elif kind == INDEPENDENT_FAN:
        v = pay["center"]
        out[v] = _smallest_free(palette, {out[w] for w in pay["neighbors"]})
    elif kind == BIPARTITE_SIDE:
        _lift_bipartite_side(pay, out, palette)
    if any(c is None for c in out):
        raise LiftingFailure(f"{kind}: some vertex left uncolored")
    if step.pre is not None and not Coloring(out).is_proper(step.pre, palette):
        raise LiftingFailure(f"{kind}: lifted coloring is not proper")
    return out


def _lift_bipartite_side(pay: dict, out: list, palette: int) -> None:
    boundary_colors = {out[b] for b in pay["boundary"]}
    free = [c for c in range(palette) if c not in boundary_colors]
    one, two = pay["sideOne"], pay["sideTwo"]
    adjacency = {int(k): v for k, v in pay["boundaryAdjacency"].items()}
    if len(free) >= 2:
        for v in one:
            out[v] = free[0]
        for v in two:
            out[v] = free[1]
        return
    if not free:
        raise LiftingFailure("boundary uses every color")
    spare = free[0]
    for fixed, other in ((one, two), (two, one)):
        trial = {}
        for v in other:
            seen = {out[w] for w in adjacency[v]} | {spare}
            choice = next((c for c in range(palette) if c not in seen), None)
            if choice is None:
                break
            trial[v] = choice
        else:
            for v in fixed:
                out[v] = spare
            for v, c in trial.items():
                out[v] = c
            return
    raise LiftingFailure("a removed vertex sees every boundary color from both sides")


def lift_coloring(trace: ReductionTrace, coloring: Coloring | list[int]) -> Coloring:
    """Lift a proper (t-1)-coloring of ``trace.reduced`` to ``trace.original``."""
    palette = trace.palette
    col = list(coloring.assignment if isinstance(coloring, Coloring) else coloring)
    if not Coloring(col).is_proper(trace.reduced, palette):
        raise PreconditionViolation(f"coloring is not a proper {palette}-coloring of the reduced graph")
    for step in reversed(trace.steps):
        col = lift_step(step, col, palette)
    return Coloring(col)
