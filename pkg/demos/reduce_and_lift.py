"""Reduce a graph to a fixpoint, color the small remainder and lift the
coloring back step by step."""

import random

from oddminor import generators as G
from oddminor.reductions import lift_coloring, reduce_to_fixpoint
from oddminor.structure import k_coloring

if __name__ == "__main__":
    rng = random.Random(3)
    g = G.random_graph(12, 0.45, rng)
    t = 5
    trace = reduce_to_fixpoint(g, t)
    h = trace.reduced
    print(f"input n={g.n} m={g.m}; reduced n={h.n} m={h.m} after {len(trace.steps)} steps")
    for step in trace.steps:
        print(f"  {step.kind}: {step.payload}")
    col = k_coloring(h, t - 1)
    if col is None:
        print(f"reduced graph needs more than {t - 1} colors")
    else:
        lifted = lift_coloring(trace, col)
        print(f"lifted {t - 1}-coloring: {list(lifted.assignment)}")
        assert lifted.is_proper(g, t - 1)
