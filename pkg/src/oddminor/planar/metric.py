"""Radial distance between atoms of a plane graph and disk covers.

Atoms are vertices (ids ``0..n-1``) and faces (ids ``n + face index``).
The radial graph joins each vertex to the faces it lies on; the distance
between two atoms is half the length of a shortest radial walk, so it is a
multiple of 1/2.  Distances are stored doubled, as integers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .embedding import RotationEmbedding

UNREACHABLE = -1


@dataclass(frozen=True)
class RadialMetric:
    n: int
    faces: int
    doubled: np.ndarray  # (atoms x atoms) radial walk lengths

    @property
    def atoms(self) -> int:
        return self.n + self.faces

    def vertex_atom(self, v: int) -> int:
        return v

    def face_atom(self, f: int) -> int:
        return self.n + f

    def distance(self, a: int, b: int) -> float:
        return self.doubled[a, b] / 2

    def within(self, a: int, b: int, radius: float) -> bool:
        return self.doubled[a, b] <= 2 * radius

    def check_axioms(self) -> str | None:
        """None if the table is a metric, else a description of the failure."""
        d = self.doubled
        if (d < 0).any():
            return "some atoms are unreachable"
        if not (d == d.T).all():
            return "not symmetric"
        if (np.diag(d) != 0).any() or (d + np.eye(len(d), dtype=d.dtype) == 0).any():
            return "identity of indiscernibles fails"
        # d[a, c] <= d[a, b] + d[b, c] for all b, one row of a at a time
        for a in range(len(d)):
            if (d[a][None, :] > d[a][:, None] + d).any():
                return f"triangle inequality fails from atom {a}"
        return None


def radial_distance(e: RotationEmbedding) -> RadialMetric:
    n, f = e.n, len(e.faces)
    adj: list[set[int]] = [set() for _ in range(n + f)]
    for i, face in enumerate(e.faces):
        for v in face:
            adj[v].add(n + i)
            adj[n + i].add(v)
    total = n + f
    dist = np.full((total, total), UNREACHABLE, dtype=np.int64)
    for s in range(total):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if row[y] == UNREACHABLE:
                    row[y] = row[x] + 1
                    queue.append(y)
    return RadialMetric(n, f, dist)


def greedy_disk_cover(metric: RadialMetric, targets, radius: float) -> list[tuple[int, float]]:
    """Scan targets (face indices) in ascending order and open a disk of the
    given radius at every target not yet covered.  Returns (atom, radius)."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    centers: list[int] = []
    for f in sorted(targets):
        a = metric.face_atom(f)
        if not any(metric.within(c, a, radius) for c in centers):
            centers.append(a)
    return [(c, radius) for c in centers]


@dataclass(frozen=True)
class DiskCover:
    centers: tuple[tuple[int, float], ...]
    assignment: dict  # target atom -> index into centers

    def verify(self, metric: RadialMetric, targets) -> str | None:
        for i, (a, r) in enumerate(self.centers):
            for b, s in self.centers[i + 1:]:
                if metric.within(a, b, r + s):
                    return f"disks at {a} and {b} intersect"
        for t in targets:
            holders = [i for i, (c, r) in enumerate(self.centers) if metric.within(c, t, r)]
            if len(holders) != 1 or self.assignment.get(t) != holders[0]:
                return f"target {t} is covered by disks {holders}"
        return None


def merge_disk_cover(metric: RadialMetric, cover, targets=()) -> DiskCover:
    """Merge intersecting disks until none intersect.

    Two disks (c, r) and (c', r') with d(c, c') <= r + r' become one disk of
    radius r + r' centered at the smallest atom x with d(c, x) <= r' and
    d(c', x) <= r, which contains both.  ``targets`` are atoms to assign.
    """
    disks = [(int(c), r) for c, r in cover]
    while True:
        pair = next(((i, j) for i in range(len(disks)) for j in range(i + 1, len(disks))
                     if metric.within(disks[i][0], disks[j][0], disks[i][1] + disks[j][1])), None)
        if pair is None:
            break
        i, j = pair
        (c, r), (c2, r2) = disks[i], disks[j]
        d = metric.doubled
        ok = np.nonzero((d[c] <= 2 * r2) & (d[c2] <= 2 * r) & (d[c] >= 0) & (d[c2] >= 0))[0]
        center = int(ok[0]) if len(ok) else c
        disks[i] = (center, r + r2)
        del disks[j]
    assignment = {}
    for t in targets:
        for idx, (c, r) in enumerate(disks):
            if metric.within(c, t, r):
                assignment[t] = idx
                break
    return DiskCover(tuple(disks), assignment)
