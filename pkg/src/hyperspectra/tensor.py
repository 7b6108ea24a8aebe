"""The seven hypergraph tensors in row-structured sparse form.

Every off-diagonal entry of a hypergraph tensor depends only on its first
index i and on its support S = {i1, ..., ik}, which must be an edge. A tensor
is therefore stored as a diagonal plus, for each row i, the list of pairs
(S, c_{i,S}). Dense storage would need N^k entries.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from numbers import Number
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InputError, TooLarge, ZeroDegreeVertex, ZeroVector
from .hypergraph import WeightedHypergraph

KINDS = ("A", "K", "K+", "L", "L+", "RW", "RW+")
ALIASES = {"𝓛": "RW", "𝓛+": "RW+", "𝓛⁺": "RW+", "K⁺": "K+", "L⁺": "L+", "Kplus": "K+", "Lplus": "L+", "RWplus": "RW+"}
SYMMETRIC = frozenset({"A", "K", "K+", "L", "L+"})
NONNEGATIVE = frozenset({"A", "K+", "L+", "RW+"})
NORMALIZED = frozenset({"L", "L+", "RW", "RW+"})


@lru_cache(maxsize=None)
def stirling2(k: int, r: int) -> int:
    """Stirling number of the second kind {k over r} via the alternating sum."""
    if not 1 <= r <= k:
        raise ValueError(f"stirling2 needs 1 <= r <= k, got k={k}, r={r}")
    total = sum((-1) ** j * comb(r, j) * (r - j) ** k for j in range(r + 1))
    return total // factorial(r)


def entry_count(r: int, k: int) -> int:
    """Number of entries of an order-k tensor whose index support is a fixed r-set."""
    return stirling2(k, r) * factorial(r)


def row_count_N(r: int, k: int) -> int:
    """Number of entries in one row that correspond to a fixed r-set containing the row index."""
    return stirling2(k, r) * factorial(r - 1)


def canonical_kind(kind: str) -> str:
    kind = ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise InputError(f"unknown tensor kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


@dataclass(frozen=True)
class HypergraphTensor:
    kind: str
    order: int
    dim: int
    diagonal: tuple
    rows: tuple  # rows[i] = tuple of (support, coefficient)
    exact: bool

    @property
    def symmetric(self) -> bool:
        return self.kind in SYMMETRIC

    def coefficient(self, i: int, support) -> Number:
        for S, c in self.rows[i]:
            if S == support:
                return c
        return 0

    def numeric(self) -> "HypergraphTensor":
        """Copy with floating-point coefficients."""
        return HypergraphTensor(
            self.kind, self.order, self.dim,
            tuple(float(d) for d in self.diagonal),
            tuple(tuple((S, float(c)) for S, c in row) for row in self.rows),
            False,
        )


def build(G: WeightedHypergraph, kind: str) -> HypergraphTensor:
    kind = canonical_kind(kind)
    k, n = G.order, G.n
    deg = G.degrees()
    if kind in NORMALIZED and any(d == 0 for d in deg):
        v = next(i for i, d in enumerate(deg) if d == 0)
        raise ZeroDegreeVertex(f"vertex {G.vertex_labels[v]} has degree 0; {kind} is undefined")
    sign = -1 if kind in ("K", "L", "RW") else 1
    exact = kind not in ("L", "L+")

    if kind == "A":
        diagonal = tuple(Fraction(0) for _ in range(n))
    elif kind in ("K", "K+"):
        diagonal = tuple(deg)
    else:
        diagonal = tuple(Fraction(1) if exact else 1.0 for _ in range(n))

    rows = [[] for _ in range(n)]
    for e in G.edges:
        base = e.weight / row_count_N(len(e), k)
        if kind in ("L", "L+"):
            scale = float(base)
            for j in e.support:
                scale *= float(deg[j]) ** (-1.0 / k)
            for i in e.support:
                rows[i].append((e.support, sign * scale))
        elif kind in ("RW", "RW+"):
            for i in e.support:
                rows[i].append((e.support, sign * base / deg[i]))
        else:
            for i in e.support:
                rows[i].append((e.support, sign * base))
    return HypergraphTensor(kind, k, n, diagonal, tuple(tuple(r) for r in rows), exact)


def entry(T: HypergraphTensor, index: Sequence[int]):
    if len(index) != T.order:
        raise ValueError(f"expected {T.order} indices, got {len(index)}")
    if any(not 0 <= i < T.dim for i in index):
        raise IndexError(f"index {tuple(index)} out of range")
    i = index[0]
    if all(j == i for j in index):
        return T.diagonal[i]
    return T.coefficient(i, tuple(sorted(set(index))))


def _is_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def _cover_sum(xs_all: Sequence, others: Sequence[int], support: Sequence[int], p: int):
    """Sum of prod x over ordered p-tuples from `support` that cover `others`.

    Inclusion-exclusion over the subset W of `others` left out of the tuple.
    """
    total = 0
    for size in range(len(others) + 1):
        sgn = -1 if size % 2 else 1
        for W in itertools.combinations(others, size):
            s = sum(xs_all[u] for u in support if u not in W)
            total += sgn * s**p
    return total


def contract(T: HypergraphTensor, x):
    """(T x^{k-1})_i for all i.

    Exact (Fraction) arithmetic is used when both T and x are exact; the
    result is then an object array of Fractions, otherwise a complex array.
    """
    x = list(x.tolist() if isinstance(x, np.ndarray) else x)
    if len(x) != T.dim:
        raise ValueError(f"vector of length {len(x)} for a tensor of dimension {T.dim}")
    exact = T.exact and _is_exact(x)
    if not exact:
        x = [complex(v) for v in x]
    p = T.order - 1
    out = []
    for i in range(T.dim):
        d = T.diagonal[i] if exact else complex(T.diagonal[i])
        acc = d * x[i] ** p
        for S, c in T.rows[i]:
            others = [u for u in S if u != i]
            acc += (c if exact else float(c)) * _cover_sum(x, others, S, p)
        out.append(acc)
    return np.array(out, dtype=object if exact else complex)


def contract_bruteforce(T: HypergraphTensor, x) -> np.ndarray:
    """Reference contraction summing every entry of every row; O(N^k)."""
    x = np.asarray(x, dtype=complex)
    out = np.zeros(T.dim, dtype=complex)
    for i in range(T.dim):
        for tail in itertools.product(range(T.dim), repeat=T.order - 1):
            v = entry(T, (i,) + tail)
            if v:
                out[i] += float(v) * np.prod(x[list(tail)])
    return out


def row_sum(T: HypergraphTensor, i: int):
    return T.diagonal[i] + sum(c * row_count_N(len(S), T.order) for S, c in T.rows[i])


def offdiagonal_abs_sum(T: HypergraphTensor, i: int):
    return sum(abs(c) * row_count_N(len(S), T.order) for S, c in T.rows[i])


def is_diagonally_dominated(T: HypergraphTensor) -> bool:
    for i in range(T.dim):
        lhs, rhs = T.diagonal[i], offdiagonal_abs_sum(T, i)
        if T.exact:
            if lhs < rhs:
                return False
        elif lhs < rhs - 1e-12 * max(1.0, abs(rhs)):
            return False
    return True


def is_nonnegative(T: HypergraphTensor) -> bool:
    return all(d >= 0 for d in T.diagonal) and all(c >= 0 for row in T.rows for _, c in row)


def _row_masks(T: HypergraphTensor):
    return [[sum(1 << u for u in S) for S, c in row if c != 0] for row in T.rows]


def is_weakly_irreducible(T: HypergraphTensor, cap: int = 20) -> bool:
    if T.dim > cap:
        raise TooLarge(f"weak irreducibility search over 2^{T.dim} subsets exceeds cap")
    masks = _row_masks(T)
    full = (1 << T.dim) - 1
    for J in range(1, full):
        hit = any(
            (S & ~J) != 0
            for i in range(T.dim) if J >> i & 1
            for S in masks[i]
        )
        if not hit:
            return False
    return True


def is_irreducible(T: HypergraphTensor, cap: int = 20) -> bool:
    """T is reducible iff some proper J admits no nonzero entry T[i, tail] with i in J, tail outside J."""
    if T.dim > cap:
        raise TooLarge(f"irreducibility search over 2^{T.dim} subsets exceeds cap")
    masks = _row_masks(T)
    full = (1 << T.dim) - 1
    for J in range(1, full):
        escapes = any(
            (S & J) == (1 << i)
            for i in range(T.dim) if J >> i & 1
            for S in masks[i]
        )
        if not escapes:
            return False
    return True


def residual(T: HypergraphTensor, lam, x):
    """Max-norm of T x^{k-1} - lam x^{[k-1]} after scaling x to unit max-norm."""
    x = list(x.tolist() if isinstance(x, np.ndarray) else x)
    scale = max(abs(v) for v in x)
    if scale == 0:
        raise ZeroVector("eigenvector must be nonzero")
    exact = T.exact and _is_exact(x) and isinstance(lam, (int, Fraction))
    if exact:
        x = [Fraction(v) / scale for v in x]
    else:
        x = [complex(v) / scale for v in x]
        lam = complex(lam)
    r = contract(T, x)
    p = T.order - 1
    return max(abs(r[i] - lam * x[i] ** p) for i in range(T.dim))


def as_matrix(T: HypergraphTensor) -> np.ndarray:
    """Dense N x N matrix of an order-2 tensor."""
    if T.order != 2:
        raise ValueError("as_matrix needs an order-2 tensor")
    M = np.zeros((T.dim, T.dim))
    for i in range(T.dim):
        M[i, i] = float(T.diagonal[i])
        for S, c in T.rows[i]:
            j = S[0] if S[1] == i else S[1]
            M[i, j] = float(c)
    return M


def _num_out(v) -> dict:
    out = {"value": float(v)}
    if isinstance(v, (int, Fraction)):
        v = Fraction(v)
        out["exact"] = f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    return out


def _num_in(d):
    if "exact" in d:
        return Fraction(d["exact"])
    return float(d["value"])


def to_dict(T: HypergraphTensor) -> dict:
    """Serializable dump; vertex indices are 1-based like the input format."""
    return {
        "kind": T.kind,
        "order": T.order,
        "dimension": T.dim,
        "exact": T.exact,
        "diagonal": [_num_out(d) for d in T.diagonal],
        "entries": [
            {"row": i + 1, "support": [u + 1 for u in S], "coefficient": _num_out(c)}
            for i, row in enumerate(T.rows) for S, c in row
        ],
    }


def from_dict(d: dict) -> HypergraphTensor:
    n = int(d["dimension"])
    rows = [[] for _ in range(n)]
    for item in d["entries"]:
        rows[item["row"] - 1].append((tuple(u - 1 for u in item["support"]), _num_in(item["coefficient"])))
    return HypergraphTensor(
        canonical_kind(d["kind"]), int(d["order"]), n,
        tuple(_num_in(v) for v in d["diagonal"]),
        tuple(tuple(r) for r in rows),
        bool(d["exact"]),
    )


def save(T: HypergraphTensor, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(to_dict(T), fh, indent=2)
        fh.write("\n")


def load(path: str | Path) -> HypergraphTensor:
    with open(path) as fh:
        return from_dict(json.load(fh))
