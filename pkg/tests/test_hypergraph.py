import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperspectra import hypergraph as hg
from hyperspectra.errors import (
    DuplicateEdge,
    EdgeTooSmall,
    IndexOutOfRange,
    InputError,
    InvalidEll,
    NonPositiveWeight,
    TooLarge,
)

from conftest import DATA, weighted_hypergraphs


def test_validate_two_edge(two_edge):
    G = hg.validate(json.loads((DATA / "ex123.json").read_text()))
    assert G.n == 3 and G.m == 2 and G.order == 3
    assert G.weight((0, 1, 2)) == 2
    assert G.degrees() == two_edge.degrees()


@pytest.mark.parametrize("raw, err", [
    ({"vertices": 2, "edges": [[1]]}, EdgeTooSmall),
    ({"vertices": 2, "edges": [{"vertices": [1, 2], "weight": -1}]}, NonPositiveWeight),
    ({"vertices": 2, "edges": [{"vertices": [1, 2], "weight": 0}]}, NonPositiveWeight),
    ({"vertices": 2, "edges": [[1, 3]]}, IndexOutOfRange),
    ({"vertices": 3, "edges": [[1, 2], [2, 1]]}, DuplicateEdge),
    ({"vertices": 3, "edges": []}, InputError),
    ({"edges": [[1, 2]]}, InputError),
])
def test_validate_rejects(raw, err):
    with pytest.raises(err):
        hg.validate(raw)


def test_weights_parse_exactly():
    assert hg.parse_weight("3/2") == Fraction(3, 2)
    assert hg.parse_weight(0.1) == Fraction(1, 10)
    with pytest.raises(InputError):
        hg.parse_weight("abc")
    G = hg.load(DATA / "weighted.json")
    assert [e.weight for e in G.edges] == [Fraction(3, 2), Fraction(1, 2)]


def test_degree_profiles(two_edge):
    p = hg.degree_profile(two_edge)
    assert p.degrees == (3, 3, 2) and p.nabla == 3
    assert hg.degree_profile(hg.hypergraph([[0, 1]])).degrees == (1, 1)
    assert hg.degree_profile(hg.hyperflower(3, 2)).degrees == (2, 2, 1, 1)


def test_connectivity(two_edge):
    assert hg.is_connected(two_edge)
    assert not hg.is_connected(hg.hypergraph([[0, 1], [2, 3]]))
    assert all(hg.is_connected(hg.hyperflower(k, M)) for k in (3, 4) for M in (1, 2, 3))


def test_reducibility(two_edge):
    v1, v2 = hg.is_reducible(two_edge)
    assert v1 == {0, 1} and v2 == {2}
    assert hg.is_reducible(hg.hypergraph([[0, 1], [1, 2]])) is None
    assert hg.is_reducible(hg.hypergraph([[0, 1], [2, 3]])) is not None


def test_duplicates():
    assert hg.duplicate_classes(hg.hyperflower(3, 3)) == [frozenset({2, 3, 4})]
    assert hg.duplicate_classes(hg.hyperflower(4, 2)) == [frozenset({3, 4})]
    assert hg.duplicate_pairs(hg.hypergraph([[0, 1], [0, 1, 2]], weights=[1, 2])) == []
    # two disjoint edges: every row is supported on a different vertex, so no pair qualifies
    assert hg.duplicate_pairs(hg.hypergraph([[0, 1], [2, 3]])) == []


def test_odd_bipartition():
    v1, v2 = hg.odd_bipartition(hg.hypergraph([[0, 1, 2, 3]]))
    assert hg.is_odd_bipartition(hg.hypergraph([[0, 1, 2, 3]]), v1)
    assert hg.is_odd_bipartition(hg.hypergraph([[0, 1, 2, 3]]), {0})
    assert hg.odd_bipartition(hg.hyperflower(3, 2)) is None
    c4 = hg.load(DATA / "c4.json")
    v1, v2 = hg.odd_bipartition(c4)
    assert {frozenset(v1), frozenset(v2)} == {frozenset({0, 2}), frozenset({1, 3})}
    assert hg.odd_bipartition(hg.hypergraph([[0, 1], [1, 2], [0, 2]])) is None


def test_colorings():
    assert hg.find_coloring(hg.hypergraph([[0, 1]]), 2) == (1, 2)
    assert hg.find_coloring(hg.hypergraph([[0, 1], [1, 2], [0, 2]]), 2) is None
    phi = hg.find_coloring(hg.hyperflower(3, 2), 3)
    assert phi is not None and hg.is_coloring(hg.hyperflower(3, 2), phi, 3)
    with pytest.raises(InvalidEll):
        hg.find_coloring(hg.hypergraph([[0, 1]]), 3)
    with pytest.raises(TooLarge):
        hg.find_coloring(hg.hyperflower(3, 20), 3, cap=1000)


def test_disjoint_union(two_edge):
    K2 = hg.hypergraph([[0, 1]])
    U = hg.disjoint_union(K2, K2)
    assert (U.n, U.m) == (4, 2)
    U = hg.disjoint_union(two_edge, K2)
    assert (U.n, U.m, U.order) == (5, 3, 3)


def test_hyperflower_shapes():
    G = hg.hyperflower(3, 2)
    assert [e.support for e in G.edges] == [(0, 1, 2), (0, 1, 3)]
    star = hg.hyperflower(2, 4)
    assert star.order == 2 and star.degrees()[0] == 4


@given(weighted_hypergraphs())
def test_roundtrip(tmp_path_factory, G):
    path = tmp_path_factory.mktemp("g") / "g.json"
    hg.dump(G, path)
    H = hg.load(path)
    assert H.edges == G.edges and H.vertex_labels == G.vertex_labels


@given(weighted_hypergraphs())
def test_degree_sum(G):
    assert sum(G.degrees()) == sum(e.weight * len(e) for e in G.edges)


@given(weighted_hypergraphs(connected=True))
def test_connected_is_not_disconnected(G):
    assert hg.is_connected(G)


@given(st.integers(2, 9), st.integers(1, 5))
def test_compositions_count(total, parts):
    from math import comb

    comps = list(hg.compositions(total, parts))
    assert len(comps) == (comb(total - 1, parts - 1) if parts <= total else 0)
    assert all(sum(c) == total and min(c) >= 1 for c in comps)
