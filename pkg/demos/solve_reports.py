"""Run the solver on a few graphs and print the JSON reports."""

import json

from oddminor import generators as G
from oddminor.pipeline import Config, solve, verify_report

if __name__ == "__main__":
    cases = [("K4", G.complete(4), 4), ("K33", G.complete_bipartite(3, 3), 3), ("C5", G.cycle(5), 3),
             ("octahedron", G.octahedron(), 4)]
    for name, g, t in cases:
        r = solve(g, t)
        assert verify_report(g, t, r) is None
        print(f"{name} t={t}: {r.outcome} (model search {r.model_search})")
    # with the search and the coloring DP switched off the last branch is reached
    r = solve(G.complete(5), 4, Config(model_max_n=3, dp_width_cap=-1))
    data = r.to_json()["structure"]
    print(f"structure report: width {data['width']}, verdicts {[b['verdict'] for b in data['bags']]}, "
          f"flagged {data['flaggedBags']}, status {data['status']!r}")
    print(json.dumps(data["bags"][0], sort_keys=True))
