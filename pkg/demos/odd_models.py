"""Odd clique models versus ordinary clique minors.

K_{3,3} has a K_3 minor but no odd K_3 minor (it has no odd cycle), while
C_5 has an odd K_3 model whose connectors close the odd cycle.
"""

from oddminor import generators as G
from oddminor.oddmodel import find_clique_minor, find_odd_clique_model, validate_odd_model


def show(name, g, t):
    minor = find_clique_minor(g, t)
    odd = find_odd_clique_model(g, t)
    print(f"{name}: K_{t} minor {'yes' if minor else 'no'}, odd K_{t} model {'yes' if odd else 'no'}")
    if odd is not None:
        assert validate_odd_model(g, odd) is None
        for i, node in enumerate(odd.nodes):
            print(f"  node {i}: {sorted(node)} colors {[odd.coloring[v] for v in sorted(node)]}")
        print(f"  connectors: {sorted(odd.connectors.items())}")


if __name__ == "__main__":
    show("K33", G.complete_bipartite(3, 3), 3)
    show("C5", G.cycle(5), 3)
    show("K44", G.complete_bipartite(4, 4), 4)
    show("wheel W5", G.wheel(5), 4)
