import itertools

from hypothesis import strategies as st

from oddminor.graph import Graph


@st.composite
def graphs(draw, max_n=9, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)
