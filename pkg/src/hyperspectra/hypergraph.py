"""Weighted hypergraphs and their purely combinatorial structure.

Vertices are 0-based internally. The JSON input format uses 1-based indices,
matching the usual v_1, ..., v_N labelling.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateEdge,
    EdgeTooSmall,
    IndexOutOfRange,
    InputError,
    InvalidEll,
    NonPositiveWeight,
    TooLarge,
)

REDUCIBILITY_CAP = 20
COLORING_CAP = 10**7
MULTISET_CAP = 10**6


@dataclass(frozen=True)
class Edge:
    support: tuple[int, ...]
    weight: Fraction = Fraction(1)

    def __len__(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class WeightedHypergraph:
    vertex_labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e.support: e for e in self.edges})

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def order(self) -> int:
        """Maximum edge cardinality (the tensor order)."""
        return max(len(e) for e in self.edges)

    def weight(self, support: Iterable[int]) -> Fraction | None:
        e = self._index.get(tuple(sorted(support)))
        return None if e is None else e.weight

    def incident(self, v: int) -> list[Edge]:
        return [e for e in self.edges if v in e.support]

    def degrees(self) -> list[Fraction]:
        deg = [Fraction(0)] * self.n
        for e in self.edges:
            for v in e.support:
                deg[v] += e.weight
        return deg

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertex_labels),
            "edges": [
                {"vertices": [v + 1 for v in e.support], "weight": _weight_out(e.weight)}
                for e in self.edges
            ],
        }


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[Fraction, ...]
    delta_min: Fraction
    delta_max: Fraction
    nabla: int


@dataclass
class StructuralReport:
    connected: bool
    reducible_witness: tuple[frozenset, frozenset] | None
    duplicate_classes: list[frozenset]
    odd_bipartition: tuple[frozenset, frozenset] | None
    colorings: dict[int, tuple[int, ...] | None]


def parse_weight(w) -> Fraction:
    if isinstance(w, bool):
        raise InputError(f"invalid weight {w!r}")
    if isinstance(w, Fraction):
        return w
    if isinstance(w, int):
        return Fraction(w)
    if isinstance(w, float):
        # decimal reading: 0.1 means 1/10
        return Fraction(repr(w))
    if isinstance(w, str):
        try:
            return Fraction(w.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid weight {w!r}") from exc
    raise InputError(f"invalid weight {w!r}")


def _weight_out(w: Fraction):
    if w.denominator == 1:
        return w.numerator
    return f"{w.numerator}/{w.denominator}"


def hypergraph(
    edges: Iterable[Sequence[int]],
    n: int | None = None,
    weights: Sequence | None = None,
    labels: Sequence[str] | None = None,
) -> WeightedHypergraph:
    """Build a validated hypergraph from 0-based edge lists."""
    edges = [tuple(e) for e in edges]
    if weights is None:
        weights = [1] * len(edges)
    if len(weights) != len(edges):
        raise InputError("one weight per edge required")
    if n is None:
        n = 1 + max((v for e in edges for v in e), default=-1)
    if labels is None:
        labels = [f"v{i + 1}" for i in range(n)]
    if len(labels) != n:
        raise InputError("one label per vertex required")
    if not edges:
        raise InputError("a hypergraph needs at least one edge")

    seen = set()
    out = []
    for e, w in zip(edges, weights):
        for v in e:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise IndexOutOfRange(f"vertex index {v!r} outside [0, {n})")
        support = tuple(sorted(set(e)))
        if len(support) < 2:
            raise EdgeTooSmall(f"edge {e} has fewer than two vertices")
        weight = parse_weight(w)
        if weight <= 0:
            raise NonPositiveWeight(f"edge {e} has weight {weight}")
        if support in seen:
            raise DuplicateEdge(f"edge {support} listed twice")
        seen.add(support)
        out.append(Edge(support, weight))
    return WeightedHypergraph(tuple(str(s) for s in labels), tuple(out))


def validate(raw: Mapping) -> WeightedHypergraph:
    """Validate a parsed JSON document (1-based vertex indices)."""
    if not isinstance(raw, Mapping):
        raise InputError("hypergraph document must be an object")
    if "vertices" not in raw or "edges" not in raw:
        raise InputError("hypergraph document needs 'vertices' and 'edges'")
    labels = raw["vertices"]
    if isinstance(labels, int):
        labels = [f"v{i + 1}" for i in range(labels)]
    n = len(labels)
    edges, weights = [], []
    for item in raw["edges"]:
        if isinstance(item, Mapping):
            verts, w = item.get("vertices"), item.get("weight", 1)
        else:
            verts, w = item, 1
        if not isinstance(verts, (list, tuple)):
            raise InputError(f"edge {item!r} lacks a vertex list")
        for v in verts:
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
                raise IndexOutOfRange(f"vertex index {v!r} outside [1, {n}]")
        edges.append([v - 1 for v in verts])
        weights.append(w)
    return hypergraph(edges, n=n, weights=weights, labels=labels)


def load(path: str | Path) -> WeightedHypergraph:
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from exc
    return validate(raw)


def dump(G: WeightedHypergraph, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(G.to_dict(), fh, indent=2)
        fh.write("\n")


def degree_profile(G: WeightedHypergraph) -> DegreeProfile:
    deg = G.degrees()
    return DegreeProfile(tuple(deg), min(deg), max(deg), G.order)


def is_connected(G: WeightedHypergraph) -> bool:
    # BFS on the vertex-edge incidence graph
    seen = {0}
    queue = deque([0])
    by_vertex = [[] for _ in range(G.n)]
    for idx, e in enumerate(G.edges):
        for v in e.support:
            by_vertex[v].append(idx)
    used = set()
    while queue:
        v = queue.popleft()
        for idx in by_vertex[v]:
            if idx in used:
                continue
            used.add(idx)
            for u in G.edges[idx].support:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return len(seen) == G.n


def _masks(G: WeightedHypergraph) -> list[int]:
    return [sum(1 << v for v in e.support) for e in G.edges]


def is_reducible(G: WeightedHypergraph, cap: int = REDUCIBILITY_CAP):
    """Return a witness (V1, V2) of reducibility, or None if G is irreducible.

    V1 must meet every edge it touches in at least two vertices.
    """
    if G.n > cap:
        raise TooLarge(f"reducibility search over 2^{G.n} subsets exceeds cap 2^{cap}")
    masks = _masks(G)
    full = (1 << G.n) - 1
    for s in range(1, full):
        if all((s & em).bit_count() != 1 for em in masks):
            v1 = frozenset(i for i in range(G.n) if s >> i & 1)
            return v1, frozenset(range(G.n)) - v1
    return None


def _same_row(G: WeightedHypergraph, i: int, j: int) -> bool:
    """Combinatorial test that rows i and j of the adjacency tensor coincide.

    Only edges of maximal cardinality can appear in a duplicate vertex's row
    without that vertex reappearing among the remaining indices.
    """
    k = G.order
    ei, ej = G.incident(i), G.incident(j)
    if len(ei) != len(ej):
        return False
    for e in ei:
        if len(e) != k or j in e.support:
            return False
        image = (set(e.support) - {i}) | {j}
        if G.weight(image) != e.weight:
            return False
    return all(len(e) == k for e in ej)


def duplicate_pairs(G: WeightedHypergraph) -> list[tuple[int, int]]:
    return [(i, j) for i, j in itertools.combinations(range(G.n), 2) if _same_row(G, i, j)]


def duplicate_classes(G: WeightedHypergraph) -> list[frozenset]:
    """Classes of mutually duplicate vertices (only classes of size >= 2)."""
    parent = list(range(G.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in duplicate_pairs(G):
        parent[find(i)] = find(j)
    groups: dict[int, set] = {}
    for v in range(G.n):
        groups.setdefault(find(v), set()).add(v)
    classes = [frozenset(c) for c in groups.values() if len(c) > 1]
    for c in classes:
        for i, j in itertools.combinations(sorted(c), 2):
            if not _same_row(G, i, j):
                raise AssertionError(f"duplicate closure is not pairwise: {i}, {j}")
    return sorted(classes, key=min)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` positive integers summing to `total`."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def edge_multisets(support: Sequence[int], k: int):
    """Multiplicity vectors of the size-k multisets whose support is exactly `support`."""
    return compositions(k, len(support))


def _multiset_budget(G: WeightedHypergraph, cap: int):
    from math import comb

    k = G.order
    for e in G.edges:
        if comb(k - 1, len(e) - 1) > cap:
            raise TooLarge(f"edge {e.support} spans more than {cap} multisets")


def is_odd_bipartition(G: WeightedHypergraph, v1: Iterable[int]) -> bool:
    v1 = set(v1)
    k = G.order
    if k % 2:
        return False
    for e in G.edges:
        for counts in edge_multisets(e.support, k):
            if sum(c for v, c in zip(e.support, counts) if v in v1) % 2 == 0:
                return False
    return True


def odd_bipartition(G: WeightedHypergraph, cap: int = REDUCIBILITY_CAP, multiset_cap: int = MULTISET_CAP):
    if G.order % 2:
        return None
    if G.n > cap:
        raise TooLarge(f"odd-bipartition search over 2^{G.n} subsets exceeds cap 2^{cap}")
    _multiset_budget(G, multiset_cap)
    everyone = frozenset(range(G.n))
    for s in range(1, 1 << G.n):
        v1 = frozenset(i for i in range(G.n) if s >> i & 1)
        if is_odd_bipartition(G, v1):
            return v1, everyone - v1
    return None


def is_coloring(G: WeightedHypergraph, phi: Sequence[int], ell: int) -> bool:
    k = G.order
    target = (k // ell) % k
    for e in G.edges:
        for counts in edge_multisets(e.support, k):
            if sum(c * phi[v] for v, c in zip(e.support, counts)) % k != target:
                return False
    return True


def find_coloring(G: WeightedHypergraph, ell: int, cap: int = COLORING_CAP):
    """Search for a (nabla, ell)-coloring phi: [N] -> {1..nabla}; None if none exists."""
    k = G.order
    if ell < 2 or k % ell:
        raise InvalidEll(f"ell={ell} must be >= 2 and divide the order {k}")
    if k**G.n > cap:
        raise TooLarge(f"{k}^{G.n} colorings exceed cap {cap}")
    target = (k // ell) % k
    constraints = []  # (last vertex, support, list of multiplicity vectors)
    for e in G.edges:
        constraints.append((max(e.support), e.support, list(edge_multisets(e.support, k))))
    by_last: dict[int, list] = {}
    for c in constraints:
        by_last.setdefault(c[0], []).append(c)

    phi = [0] * G.n

    def extend(v: int) -> bool:
        if v == G.n:
            return True
        for colour in range(1, k + 1):
            phi[v] = colour
            ok = all(
                sum(c * phi[u] for u, c in zip(support, counts)) % k == target
                for _, support, multis in by_last.get(v, ())
                for counts in multis
            )
            if ok and extend(v + 1):
                return True
        return False

    return tuple(phi) if extend(0) else None


def disjoint_union(G1: WeightedHypergraph, G2: WeightedHypergraph) -> WeightedHypergraph:
    shift = G1.n
    edges = [e.support for e in G1.edges] + [tuple(v + shift for v in e.support) for e in G2.edges]
    weights = [e.weight for e in G1.edges] + [e.weight for e in G2.edges]
    return hypergraph(edges, n=G1.n + G2.n, weights=weights,
                      labels=list(G1.vertex_labels) + list(G2.vertex_labels))


def hyperflower(k: int, M: int) -> WeightedHypergraph:
    """k-uniform hyperflower: k-1 central vertices shared by M edges, one peripheral vertex each."""
    if k < 2 or M < 1:
        raise InputError("hyperflower needs k >= 2 and M >= 1")
    centre = list(range(k - 1))
    return hypergraph([centre + [j] for j in range(k - 1, k - 1 + M)], n=k - 1 + M)


def structural_report(G: WeightedHypergraph, ells: Sequence[int] | None = None) -> StructuralReport:
    k = G.order
    if ells is None:
        ells = [d for d in range(2, k + 1) if k % d == 0]
    return StructuralReport(
        connected=is_connected(G),
        reducible_witness=is_reducible(G),
        duplicate_classes=duplicate_classes(G),
        odd_bipartition=odd_bipartition(G),
        colorings={ell: find_coloring(G, ell) for ell in ells},
    )
