"""List-coloring extension for plane graphs (Thomassen's 5-list argument).

Working graphs are rotation dicts ``{v: [neighbors clockwise]}``; the outer
face is named by a dart ``(a, b)`` on it, with ``a`` and ``b`` precolored.
The recursion:

* not 2-connected: color the block containing ``ab`` first, then every
  piece hanging off one of its cut vertices, with the cut vertex and one of
  its outer neighbors precolored;
* 2-connected: put a hub vertex (five private colors) into every inner face
  longer than a triangle, so the graph becomes a near-triangulation;
* a chord of the outer cycle splits the graph in two, colored one after the
  other;
* otherwise the outer neighbor ``w`` of ``a`` (other than ``b``) reserves
  two colors, they are removed from its inner neighbors' lists, the rest is
  colored, and ``w`` takes whichever reserved color its other outer
  neighbor did not.
"""

from __future__ import annotations

import itertools

import networkx as nx

from ..errors import Disconnected, LiftingFailure, PreconditionViolation
from ..graph import Coloring, Graph, ListAssignment
from .embedding import RotationEmbedding

_HUB_COLORS = frozenset(range(-5, 0))


def _trace(rot, u, v):
    walk = []
    a, b = u, v
    while True:
        walk.append(a)
        r = rot[b]
        a, b = b, r[r.index(a) - 1]
        if (a, b) == (u, v):
            return walk


def _restrict(rot, keep):
    return {v: [w for w in rot[v] if w in keep] for v in rot if v in keep}


def _components(rot, removed=()):
    removed = set(removed)
    seen, comps = set(), []
    for s in rot:
        if s in seen or s in removed:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in rot[x]:
                if y not in seen and y not in removed:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


class _Extender:
    def __init__(self, lists: dict, colors: dict):
        self.lists = lists  # vertex -> set, mutated as the recursion reserves colors
        self.colors = colors
        self.next_hub = -1

    def pick(self, v, avoid=()):
        options = sorted(self.lists[v] - set(avoid))
        if not options:
            raise LiftingFailure(f"vertex {v} has no color left")
        return options[0]

    # entry: a, b precolored, dart (a, b) on the outer face of the connected rot
    def solve(self, rot, a, b):
        if len(rot) == 2:
            return
        G = nx.Graph((u, v) for u in rot for v in rot[u])
        if not nx.is_biconnected(G):
            return self._blocks(rot, G, a, b)
        walk = _trace(rot, a, b)
        rot = self._triangulate(rot, walk)
        on_walk = {v: i for i, v in enumerate(walk)}
        chord = self._chord(rot, walk, on_walk)
        if chord is not None:
            return self._split(rot, walk, chord, a, b)
        w = walk[-1]
        before = walk[-2]
        reserve = sorted(self.lists[w] - {self.colors[a]})[:2]
        if len(reserve) < 2:
            raise LiftingFailure(f"outer vertex {w} has fewer than three colors")
        for u in rot[w]:
            if u not in (a, before):
                self.lists[u] -= set(reserve)
        rest = {v: [x for x in rot[v] if x != w] for v in rot if v != w}
        self.solve(rest, a, b)
        self.colors[w] = reserve[0] if reserve[0] != self.colors[before] else reserve[1]

    def _blocks(self, rot, G, a, b):
        blocks = [set(c) for c in nx.biconnected_components(G)]
        root = next(i for i, blk in enumerate(blocks) if a in blk and b in blk)
        done = set(blocks[root])
        self.solve(_restrict(rot, done), a, b)
        # pieces hanging off already-colored vertices
        pending = list(sorted(done))
        while pending:
            c = pending.pop(0)
            for comp in _components(rot, removed=done):
                if not any(x in comp for x in rot[c]):
                    continue
                piece = comp | {c}
                sub = _restrict(rot, piece)
                anchor = next(x for x in rot[c] if x in done)
                r = rot[c]
                i = r.index(anchor)
                # first piece neighbor met going from the anchor against the clockwise order
                y = next(r[(i - k) % len(r)] for k in range(1, len(r) + 1) if r[(i - k) % len(r)] in comp)
                self.colors[y] = self.pick(y, [self.colors[c]])
                self.lists[y] = {self.colors[y]}
                self.solve(sub, c, y)
                done |= comp
                pending.extend(sorted(comp))

    def _triangulate(self, rot, walk):
        outer = set(zip(walk, walk[1:] + walk[:1]))
        seen = set(outer)
        faces = []
        for u in rot:
            for v in rot[u]:
                if (u, v) in seen:
                    continue
                face = _trace(rot, u, v)
                seen.update(zip(face, face[1:] + face[:1]))
                if len(face) > 3:
                    faces.append(face)
        if not faces:
            return rot
        rot = {v: list(r) for v, r in rot.items()}
        for face in faces:
            hub = self.next_hub  # hubs get negative ids
            self.next_hub -= 1
            k = len(face)
            for i, v in enumerate(face):
                prev, nxt = face[i - 1], face[(i + 1) % k]
                r = rot[v]
                # the face leaves v toward nxt, which sits just before prev
                j = r.index(prev)
                assert r[j - 1] == nxt
                r.insert(j, hub)
            rot[hub] = list(face)
            self.lists[hub] = set(_HUB_COLORS)
        return rot

    def _chord(self, rot, walk, on_walk):
        k = len(walk)
        for i, u in enumerate(walk):
            for v in rot[u]:
                j = on_walk.get(v)
                if j is None or j <= i + 1 or (i == 0 and j == k - 1):
                    continue
                return i, j
        return None

    def _split(self, rot, walk, chord, a, b):
        i, j = chord
        u, v = walk[i], walk[j]
        arc1 = set(walk[i + 1:j])
        arc2 = set(walk[j + 1:]) | set(walk[:i])
        ab_side = arc1 if i == 0 else arc2
        comps = _components(rot, removed=(u, v))
        side1 = {u, v}
        side2 = {u, v}
        for comp in comps:
            (side1 if comp & ab_side else side2).update(comp)
        self.solve(_restrict(rot, side1), a, b)
        dart = (v, u) if ab_side is arc2 else (u, v)
        self.solve(_restrict(rot, side2), *dart)


def _check_lists(g: Graph, lists: ListAssignment):
    if len(lists) != g.n:
        raise PreconditionViolation("need one list per vertex")


def thomassen_extend(g: Graph, e: RotationEmbedding, lists: ListAssignment, x: int, y: int) -> Coloring:
    """Color ``g`` from ``lists`` when ``x`` and ``y`` are consecutive on the
    outer face walk with distinct single-color lists, the other outer
    vertices have at least three colors and the rest at least five."""
    _check_lists(g, lists)
    if not e.consistent_with(g):
        raise PreconditionViolation("embedding does not match the graph")
    if g.n == 0 or not nx.is_connected(g.to_networkx()):
        raise Disconnected("thomassen_extend needs a connected graph")
    if not g.has_edge(x, y):
        raise PreconditionViolation(f"{x} and {y} are not adjacent")
    darts = e.face_darts[e.outer]
    if (x, y) in darts:
        a, b = x, y
    elif (y, x) in darts:
        a, b = y, x
    else:
        raise PreconditionViolation(f"edge {x}-{y} is not on the outer face walk")
    if len(lists[x]) != 1 or len(lists[y]) != 1 or lists[x] == lists[y]:
        raise PreconditionViolation("x and y need distinct single-color lists")
    outer = set(e.outer_face)
    for v in range(g.n):
        need = 1 if v in (x, y) else 3 if v in outer else 5
        if len(lists[v]) < need:
            raise PreconditionViolation(f"vertex {v} has {len(lists[v])} colors, needs {need}")
    rot = {v: list(e.rotation[v]) for v in range(g.n)}
    work = {v: set(lists[v]) for v in range(g.n)}
    colors = {x: next(iter(lists[x])), y: next(iter(lists[y]))}
    _Extender(work, colors).solve(rot, a, b)
    out = Coloring([colors[v] for v in range(g.n)])
    if not out.is_proper(g) or not lists.admits(out):
        raise LiftingFailure("extension produced an invalid coloring")
    return out


def precolored_face_extend(g: Graph, e: RotationEmbedding, lists: ListAssignment, face_coloring: dict) -> Coloring:
    """Extend a coloring of a 3- or 4-vertex outer face to the whole graph
    when every vertex has a list of at least five colors."""
    _check_lists(g, lists)
    if not e.consistent_with(g):
        raise PreconditionViolation("embedding does not match the graph")
    face = list(e.outer_face)
    if len(face) not in (3, 4) or len(set(face)) != len(face):
        raise PreconditionViolation("outer face must be a 3- or 4-cycle")
    face_coloring = {int(k): v for k, v in face_coloring.items()}
    if set(face_coloring) != set(face):
        raise PreconditionViolation("face coloring must cover exactly the outer face")
    for v in face:
        if face_coloring[v] not in lists[v]:
            raise PreconditionViolation(f"color of {v} is not in its list")
    for u, v in itertools.combinations(face, 2):
        if g.has_edge(u, v) and face_coloring[u] == face_coloring[v]:
            raise PreconditionViolation(f"face coloring is improper on edge {u}-{v}")
    for v in range(g.n):
        if v not in face_coloring and len(lists[v]) < 5:
            raise PreconditionViolation(f"vertex {v} has fewer than five colors")
    x, y = face[0], face[1]
    removed = set(face[2:])
    colors = dict(face_coloring)
    work = {v: set(lists[v]) for v in range(g.n)}
    for r in removed:
        for w in e.rotation[r]:
            if w not in face_coloring:
                work[w].discard(colors[r])
    work[x], work[y] = {colors[x]}, {colors[y]}
    rot = {v: list(e.rotation[v]) for v in range(g.n)}
    rest = _restrict(rot, set(rot) - removed)
    ext = _Extender(work, colors)
    for comp in _components(rest):
        sub = _restrict(rest, comp)
        if x in comp:
            ext.solve(sub, x, y)
            continue
        # a piece cut off by the removed face vertices: start it from an
        # edge on its outer side, next to one of the removed vertices
        if len(comp) == 1:
            (v,) = comp
            colors[v] = ext.pick(v)
            continue
        k = min(v for v in comp if any(r in removed for r in rot[v]))
        r = rot[k]
        anchor = next(i for i, w in enumerate(r) if w in removed)
        h = next(r[(anchor - s) % len(r)] for s in range(1, len(r) + 1) if r[(anchor - s) % len(r)] in comp)
        colors[k] = ext.pick(k)
        colors[h] = ext.pick(h, [colors[k]])
        work[k], work[h] = {colors[k]}, {colors[h]}
        ext.solve(sub, k, h)
    out = Coloring([colors[v] for v in range(g.n)])
    if not out.is_proper(g) or not lists.admits(out):
        raise LiftingFailure("extension produced an invalid coloring")
    return out
