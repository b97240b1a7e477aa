"""Growing a region from a face by absorbing vertices that shrink its boundary.

The region starts as the vertex set of a face.  Its boundary is the set of
region vertices with a neighbor outside the region.  A phase looks at the
vertices outside the region that have a neighbor in the region as it stood
when the phase began, and keeps adding (lowest id first) any such vertex
whose addition makes the boundary strictly smaller, or which has at least
four neighbors on the boundary.  The procedure stops after the first phase
that adds nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..graph import Graph, bits
from .embedding import RotationEmbedding


@dataclass(frozen=True)
class Layering:
    region: frozenset[int]
    phases: int
    phase_of: dict  # vertex -> phase in which it was added (0 for the face)
    start: tuple[int, ...]

    def max_outside_neighbors(self, g: Graph) -> int:
        return max((sum(1 for w in g.neighbors(v) if w in self.region)
                    for v in range(g.n) if v not in self.region), default=0)

    def phase_bound(self) -> int:
        size = len(set(self.start))
        return math.ceil(math.log2(size)) + 1 if size > 1 else 1


def _boundary(masks, region: int) -> int:
    out = 0
    for v in bits(region):
        if masks[v] & ~region:
            out |= 1 << v
    return out


def _grown_boundary_size(masks, grown: int, bd: int, v: int) -> int:
    """Boundary size after adding ``v``; only v and its neighbors can change."""
    size = bd.bit_count()
    for u in bits(masks[v] & bd):
        if not masks[u] & ~grown:
            size -= 1
    if masks[v] & ~grown:
        size += 1
    return size


def boundary_layering(g: Graph, e: RotationEmbedding, start_face: int) -> Layering:
    if not 0 <= start_face < len(e.faces):
        raise ValueError(f"face {start_face} does not exist")
    masks = g.masks
    start = e.faces[start_face]
    region = 0
    for v in start:
        region |= 1 << v
    phase_of = {v: 0 for v in start}
    phases = 0
    while True:
        frontier_base = region
        reach = 0
        for v in bits(frontier_base):
            reach |= masks[v]
        candidates = sorted(bits(reach & ~frontier_base))
        added = 0
        changed = True
        while changed:
            changed = False
            bd = _boundary(masks, region)
            size = bd.bit_count()
            for v in candidates:
                if region >> v & 1:
                    continue
                grown = region | (1 << v)
                if (_grown_boundary_size(masks, grown, bd, v) < size
                        or (masks[v] & bd).bit_count() >= 4):
                    region = grown
                    phase_of[v] = phases + 1
                    added += 1
                    changed = True
                    break
        if not added:
            break
        phases += 1
    return Layering(frozenset(bits(region)), phases, phase_of, tuple(start))
