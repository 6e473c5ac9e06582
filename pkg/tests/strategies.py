from hypothesis import strategies as st

from mec.graph import WeightedGraph
from mec.instances import prufer_decode


@st.composite
def trees(draw, min_n=2, max_n=9, max_w=20):
    n = draw(st.integers(min_n, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    ws = draw(st.lists(st.integers(1, max_w), min_size=n - 1, max_size=n - 1))
    return WeightedGraph(n, tuple((u, v, w) for (u, v), w in zip(prufer_decode(seq, n), ws)))


@st.composite
def graphs(draw, max_n=7, max_m=8, max_w=20):
    n = draw(st.integers(2, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_m, len(pairs))))
    ws = draw(st.lists(st.integers(1, max_w), min_size=len(chosen), max_size=len(chosen)))
    return WeightedGraph(n, tuple((u, v, w) for (u, v), w in zip(chosen, ws)))
