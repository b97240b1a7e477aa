"""List-color a random triangulation from an outer edge, then grow a
region from the outer face with the boundary layering."""

import random

from oddminor import generators as G
from oddminor.graph import ListAssignment
from oddminor.planar import RotationEmbedding, boundary_layering, radial_distance, thomassen_extend

if __name__ == "__main__":
    rng = random.Random(5)
    g, pts = G.random_triangulation(30, rng)
    e = RotationEmbedding.from_positions(g, pts)
    outer = e.outer_face
    x, y = outer[0], outer[1]
    lists = []
    for v in range(g.n):
        if v == x:
            lists.append({0})
        elif v == y:
            lists.append({1})
        else:
            lists.append(set(rng.sample(range(8), 3 if v in outer else 5)))
    col = thomassen_extend(g, e, ListAssignment(lists), x, y)
    print("coloring:", list(col.assignment))

    lay = boundary_layering(g, e, e.outer)
    print(f"layering: {len(lay.region)} of {g.n} vertices in {lay.phases} phases (bound {lay.phase_bound()})")
    m = radial_distance(e)
    print("radial distance from vertex 0 to the outer face:", m.distance(0, m.face_atom(e.outer)))
