"""Rotation systems for plane graphs.

``rotation[v]`` lists the neighbors of ``v`` in clockwise order.  Faces are
traced by the rule: after the dart ``(u, v)`` comes ``(v, w)`` where ``w``
precedes ``u`` in the clockwise order at ``v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from ..errors import Disconnected
from ..graph import Graph, is_connected_mask


def next_dart(rotation, u: int, v: int) -> tuple[int, int]:
    rot = rotation[v]
    return v, rot[rot.index(u) - 1]


def trace_face(rotation, u: int, v: int) -> list[int]:
    """Vertices of the facial walk starting with the dart ``(u, v)``."""
    walk = []
    a, b = u, v
    while True:
        walk.append(a)
        a, b = next_dart(rotation, a, b)
        if (a, b) == (u, v):
            return walk


@dataclass(frozen=True)
class NonplanarCertificate:
    """Edges of a Kuratowski subgraph (a subdivision of K5 or K3,3)."""
    edges: tuple[tuple[int, int], ...]

    def verify(self, g: Graph) -> bool:
        if not all(g.has_edge(u, v) for u, v in self.edges):
            return False
        H = nx.Graph(list(self.edges))
        return not nx.check_planarity(H)[0]


@dataclass(frozen=True)
class RotationEmbedding:
    rotation: tuple[tuple[int, ...], ...]
    outer: int = 0
    faces: tuple[tuple[int, ...], ...] = field(default=(), compare=False)
    face_darts: tuple[tuple[tuple[int, int], ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        rot = tuple(tuple(r) for r in self.rotation)
        object.__setattr__(self, "rotation", rot)
        faces, darts = [], []
        seen = set()
        for u in range(len(rot)):
            for v in rot[u]:
                if (u, v) in seen:
                    continue
                walk = trace_face(rot, u, v)
                ds = tuple(zip(walk, walk[1:] + walk[:1]))
                seen.update(ds)
                faces.append(tuple(walk))
                darts.append(ds)
        if not any(rot) and len(rot) == 1:
            faces.append((0,))
            darts.append(())
        object.__setattr__(self, "faces", tuple(faces))
        object.__setattr__(self, "face_darts", tuple(darts))

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @property
    def outer_face(self) -> tuple[int, ...]:
        return self.faces[self.outer]

    def face_of_dart(self, u: int, v: int) -> int:
        for i, ds in enumerate(self.face_darts):
            if (u, v) in ds:
                return i
        raise KeyError((u, v))

    def with_outer(self, face: int) -> "RotationEmbedding":
        return RotationEmbedding(self.rotation, face)

    def euler_ok(self) -> bool:
        return self.n - self.m + len(self.faces) == 2

    def consistent_with(self, g: Graph) -> bool:
        return self.n == g.n and all(sorted(self.rotation[v]) == list(g.neighbors(v)) for v in range(g.n))

    def graph(self) -> Graph:
        return Graph(self.n, ((u, v) for u in range(self.n) for v in self.rotation[u] if u < v))

    def to_json(self) -> dict:
        return {"rotation": [list(r) for r in self.rotation], "faces": [list(f) for f in self.faces],
                "outerFace": self.outer}

    @classmethod
    def from_networkx(cls, emb: nx.PlanarEmbedding, n: int) -> "RotationEmbedding":
        rot = [tuple(emb.neighbors_cw_order(v)) if v in emb else () for v in range(n)]
        e = cls(rot)
        return e.with_outer(_largest_face(e))

    @classmethod
    def from_positions(cls, g: Graph, pts: Sequence[Sequence[float]]) -> "RotationEmbedding":
        """Embedding of a straight-line drawing.  Inner faces are traced
        clockwise, so the outer face is the one with positive signed area."""
        rot = []
        for v in range(g.n):
            x0, y0 = pts[v][0], pts[v][1]
            rot.append(tuple(sorted(g.neighbors(v),
                                    key=lambda w: -math.atan2(pts[w][1] - y0, pts[w][0] - x0))))
        e = cls(rot)
        if len(e.faces) <= 1:
            return e

        def area(face):
            return sum(pts[a][0] * pts[b][1] - pts[b][0] * pts[a][1]
                       for a, b in zip(face, face[1:] + face[:1])) / 2

        outer = max(range(len(e.faces)), key=lambda i: (area(e.faces[i]), -i))
        return e.with_outer(outer)


def _largest_face(e: RotationEmbedding) -> int:
    return max(range(len(e.faces)), key=lambda i: (len(e.faces[i]), -i)) if e.faces else 0


def planar_embed(g: Graph) -> RotationEmbedding | NonplanarCertificate:
    """Planar embedding of a connected graph, or a Kuratowski subgraph."""
    if g.n and not is_connected_mask(g, g.full_mask):
        raise Disconnected("planar_embed needs a connected graph")
    G = g.to_networkx()
    planar, cert = nx.check_planarity(G, counterexample=True)
    if not planar:
        return NonplanarCertificate(tuple(sorted((min(u, v), max(u, v)) for u, v in cert.edges())))
    return RotationEmbedding.from_networkx(cert, g.n)
