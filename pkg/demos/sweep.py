"""Solve every connected graph on up to 6 vertices for t = 3, 4, 5."""

from oddminor.pipeline import conjecture_sweep

if __name__ == "__main__":
    for t in (3, 4, 5):
        s = conjecture_sweep("connected:6", t)
        print(f"t={t}: {s['graphs']} graphs, outcomes {s['outcomes']}, flagged {len(s['flagged'])}")
