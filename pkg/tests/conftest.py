import sys
from itertools import combinations
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from shadowlab.core import Hypergraph  # noqa: E402


@st.composite
def hypergraphs(draw, k_min=1, k_max=4, n_max=8, min_edges=0):
    k = draw(st.integers(k_min, k_max))
    n = draw(st.integers(k, n_max))
    pool = list(combinations(range(1, n + 1), k))
    chosen = draw(st.sets(st.sampled_from(pool), min_size=min(min_edges, len(pool)), max_size=min(len(pool), 30)))
    return Hypergraph(k, n, chosen)
