import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyperspectra import hypergraph as hg

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = __import__("pathlib").Path(__file__).resolve().parent.parent / "data"


@st.composite
def weighted_hypergraphs(draw, max_n=6, max_order=4, connected=False, cover=True):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(2, min(max_order, n)))
    pool = [c for r in range(2, k + 1) for c in itertools.combinations(range(n), r)]
    edges = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=6, unique=True))
    if not any(len(e) == k for e in edges):
        edges.append(tuple(range(k)))
    if connected:
        # a spanning path keeps the draw connected
        edges += [p for p in zip(range(n - 1), range(1, n)) if p not in edges]
    if cover:
        # no isolated vertices, so the normalized kinds are defined
        used = {v for e in edges for v in e}
        edges += [(0, v) if v else (0, 1) for v in range(n) if v not in used]
    edges = list(dict.fromkeys(edges))
    weights = [Fraction(draw(st.integers(1, 9)), draw(st.integers(1, 4))) for _ in edges]
    return hg.hypergraph(edges, n=n, weights=weights)


def random_hypergraph(rng: np.random.Generator, n: int, k: int, m: int, connected: bool = True):
    """Seeded random weighted hypergraph with order exactly k."""
    edges = {tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))}
    while len(edges) < m:
        r = int(rng.integers(2, k + 1))
        edges.add(tuple(sorted(rng.choice(n, size=r, replace=False).tolist())))
    if connected:
        G = hg.hypergraph(sorted(edges), n=n)
        while not hg.is_connected(G):
            a, b = sorted(rng.choice(n, size=2, replace=False).tolist())
            edges.add((a, b))
            G = hg.hypergraph(sorted(edges), n=n)
    edges = sorted(edges)
    weights = [Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 4))) for _ in edges]
    return hg.hypergraph(edges, n=n, weights=weights)


@pytest.fixture
def two_edge():
    return hg.hypergraph([[0, 1], [0, 1, 2]], weights=[1, 2])


@pytest.fixture
def protein():
    return hg.hypergraph([[0, 1, 2, 3], [0, 4], [2, 4]])
