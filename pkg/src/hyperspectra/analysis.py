"""Theorem-driven checks on hypergraph tensors and closed-form hyperflower spectra.

Spectral-set statements are checked at the level of distinct eigenvalues
within a tolerance; multiplicities are only compared against supplied
characteristic polynomials.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import hypergraph as hg
from . import tensor as tz
from .errors import MissingReference, NoDuplicates, NotEvenOrder, OddOrder, OrderMismatch, TooLarge
from .spectra import SolveOptions, SpectrumReport, matrix_oracle, spectrum

LAPLACIAN_KINDS = ("L", "L+", "RW", "RW+")


@dataclass
class Assertion:
    name: str
    expected: object
    observed: object
    tolerance: float | None
    passed: bool
    warning: bool = False


@dataclass
class TheoremCheckResult:
    theorem_id: str
    details: list[Assertion] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.details if not a.warning)

    @property
    def warnings(self) -> list[Assertion]:
        return [a for a in self.details if a.warning and not a.passed]

    def check(self, name, expected, observed, passed, tolerance=None, warning=False) -> bool:
        self.details.append(Assertion(name, expected, observed, tolerance, bool(passed), warning))
        return bool(passed)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "passed": self.passed,
            "notes": list(self.notes),
            "assertions": [
                {"name": a.name, "expected": _jsonable(a.expected), "observed": _jsonable(a.observed),
                 "tolerance": a.tolerance, "passed": a.passed, "warning": a.warning}
                for a in self.details
            ],
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (frozenset, set)):
        return sorted(_jsonable(x) for x in v)
    return v


# ---------------------------------------------------------------- spectra helpers

def distinct(values: Iterable[complex], tol: float = 1e-8) -> np.ndarray:
    """Distinct values up to tol * max(1, |v|), sorted by (real, imag)."""
    out: list[complex] = []
    for v in sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag)):
        if not any(abs(v - u) <= tol * max(1.0, abs(v)) for u in out):
            out.append(v)
    return np.array(out, dtype=complex)


def distinct_spectrum(T: tz.HypergraphTensor, seed: int = 0, options: SolveOptions | None = None) -> np.ndarray:
    """Distinct eigenvalues: dense LAPACK for graphs, homotopy otherwise."""
    if T.order == 2:
        return distinct(matrix_oracle(T), 1e-8)
    return spectrum(T, seed, options).values


def same_set(a, b, tol: float = 1e-6) -> bool:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)

    def covered(x, y):
        return all(y.size and np.min(np.abs(y - v)) <= tol * max(1.0, abs(v)) for v in x)

    return covered(a, b) and covered(b, a)


def check_spectral_symmetry(values, ell: int, tol: float = 1e-6) -> bool:
    """True iff the set is invariant under multiplication by exp(2 pi i / ell)."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    vals = np.asarray(values, dtype=complex)
    return same_set(vals * cmath.exp(2j * math.pi / ell), vals, tol)


# ---------------------------------------------------------------- row sums and counts

def expected_row_sum(kind: str, deg):
    return {"A": deg, "K": 0, "K+": 2 * deg, "RW": 0, "RW+": 2}[kind]


def check_row_sums(G: hg.WeightedHypergraph) -> TheoremCheckResult:
    res = TheoremCheckResult("rowsums")
    deg = G.degrees()
    kinds = ["A", "K", "K+", "RW", "RW+"]
    if any(d == 0 for d in deg):
        kinds = ["A", "K", "K+"]
        res.notes.append("isolated vertex: normalized kinds skipped")
    for kind in kinds:
        T = tz.build(G, kind)
        for i in range(G.n):
            got, want = tz.row_sum(T, i), expected_row_sum(kind, deg[i])
            res.check(f"{kind} row {i + 1}", want, got, got == want)
    return res


def poly_mul(p: Sequence, q: Sequence) -> list:
    """Product of coefficient lists (highest degree first)."""
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def expand_factors(factors) -> list:
    """Coefficients of prod f_i^{m_i} for [(coeffs, m), ...], exact for rational input."""
    out = [Fraction(1)]
    for coeffs, m in factors:
        for _ in range(m):
            out = poly_mul(out, [Fraction(c) for c in coeffs])
    return out


def _as_factors(reference):
    if reference and isinstance(reference[0], tuple):
        return [(list(c), int(m)) for c, m in reference]
    return [(list(reference), 1)]


def trace_per_kind(T: tz.HypergraphTensor):
    return sum(T.diagonal)


def check_eigenvalue_count_and_sum(T: tz.HypergraphTensor, reference_charpoly=None, eigenvalues=None,
                                   tol: float = 1e-6) -> TheoremCheckResult:
    """Degree, root sum and root membership against a reference characteristic polynomial.

    The reference is a coefficient list (highest degree first) or a list of
    (factor coefficients, multiplicity) pairs.
    """
    if not reference_charpoly:
        raise MissingReference("a reference characteristic polynomial is required")
    res = TheoremCheckResult("eigencount")
    factors = _as_factors(reference_charpoly)
    poly = expand_factors(factors)
    N, k = T.dim, T.order
    degree = len(poly) - 1
    res.check("degree", N * (k - 1) ** (N - 1), degree, degree == N * (k - 1) ** (N - 1))
    root_sum = -poly[1] / poly[0] if degree else 0
    want = (k - 1) ** (N - 1) * trace_per_kind(T)
    if T.exact:
        res.check("root sum", Fraction(want), root_sum, root_sum == want)
    else:
        res.check("root sum", float(want), float(root_sum), abs(float(root_sum) - float(want)) <= tol * max(1, abs(want)), tol)
    if eigenvalues is not None:
        roots = np.concatenate([np.roots([float(c) for c in f]) for f, _ in factors if len(f) > 1] or [np.empty(0)])
        for lam in eigenvalues:
            lam = complex(lam)
            gap = float(np.min(np.abs(roots - lam))) if roots.size else math.inf
            res.check(f"root {lam:.6g}", "root of reference", gap, gap <= tol * max(1.0, abs(lam)), tol)
    return res


# ---------------------------------------------------------------- bounds

def gershgorin_holds(T: tz.HypergraphTensor, lam: float, slack: float = 1e-8) -> bool:
    """|lam - t_ii| <= sum of off-diagonal |t_i...| for some row i."""
    for i in range(T.dim):
        radius = float(tz.offdiagonal_abs_sum(T, i))
        if abs(lam - float(T.diagonal[i])) <= radius + slack * max(1.0, radius):
            return True
    return False


def check_h_bounds(T: tz.HypergraphTensor, h_pairs, slack: float = 1e-8) -> TheoremCheckResult:
    """Real eigenvalues of the Laplacian-type tensors against the diagonal-dominance bounds.

    Dominance gives |lam - deg_i| <= deg_i for K and K+, hence [0, 2 Delta],
    and [0, 2] for the normalized kinds. The tighter interval [0, Delta] for
    K and K+ is recorded as a warning-level assertion: it already fails for
    the graph K2, whose Kirchhoff Laplacian has eigenvalue 2 = 2 Delta.
    """
    res = TheoremCheckResult("hbounds")
    if T.kind == "A":
        res.notes.append("bounds do not cover the adjacency tensor; skipped")
        return res
    delta = float(max(T.diagonal))
    hi = 2 * delta if T.kind in ("K", "K+") else 2.0
    for lam, _ in h_pairs:
        lam = float(np.real(lam))
        res.check(f"{lam:.10g} in [0, {hi:g}]", [0.0, hi], lam, -slack <= lam <= hi + slack, slack)
        if T.kind in ("K", "K+"):
            res.check(f"{lam:.10g} in [0, {delta:g}]", [0.0, delta], lam, -slack <= lam <= delta + slack, slack,
                      warning=True)
        ok = gershgorin_holds(T, lam, slack)
        res.check(f"{lam:.10g} gershgorin", True, ok, ok, slack)
    return res


# ---------------------------------------------------------------- colorings and symmetry

def tensor_coloring(T: tz.HypergraphTensor, ell: int, cap: int = hg.COLORING_CAP):
    """Coloring phi of the tensor's nonzero index multisets, diagonal included; None if none exists."""
    k = T.order
    if k % ell:
        return None
    target = (k // ell) % k
    if any(d != 0 for d in T.diagonal):
        # a diagonal index multiset sums to k * phi_i = 0 mod k, never to k / ell
        return None
    if k**T.dim > cap:
        raise TooLarge(f"{k}^{T.dim} colorings exceed cap {cap}")
    supports = {S for row in T.rows for S, c in row if c != 0}
    for phi in np.ndindex(*([k] * T.dim)):
        phi = [p + 1 for p in phi]
        if all(sum(c * phi[u] for u, c in zip(S, m)) % k == target
               for S in supports for m in hg.edge_multisets(S, k)):
            return tuple(phi)
    return None


def check_colorability_symmetry(G: hg.WeightedHypergraph, ell: int, seed: int = 0,
                                options: SolveOptions | None = None, spectra: dict | None = None,
                                tol: float = 1e-6) -> TheoremCheckResult:
    """Colorability versus spectral ell-symmetry for A, K+ and L+.

    For A the hypergraph coloring is used. K+ and L+ have a nonzero diagonal,
    so their colorability is decided on the tensor itself.
    """
    res = TheoremCheckResult("colorability")
    spectra = dict(spectra or {})
    for kind in ("A", "K+", "L+"):
        if kind not in spectra:
            spectra[kind] = distinct_spectrum(tz.build(G, kind), seed, options)
        sym = check_spectral_symmetry(spectra[kind], ell, tol)
        if kind == "A":
            colorable = hg.find_coloring(G, ell) is not None
        else:
            colorable = tensor_coloring(tz.build(G, kind), ell) is not None
        res.check(f"{kind}: colorable <=> {ell}-symmetric", colorable, sym, colorable == sym, tol)
    return res


def check_odd_bipartite_spectra(G: hg.WeightedHypergraph, seed: int = 0, options: SolveOptions | None = None,
                                spectra: dict | None = None, tol: float = 1e-6) -> TheoremCheckResult:
    res = TheoremCheckResult("oddbipartite")
    spectra = dict(spectra or {})
    for kind in ("A", "K", "K+", "L"):
        if kind not in spectra:
            spectra[kind] = distinct_spectrum(tz.build(G, kind), seed, options)
    checks = {
        "spec(A) = -spec(A)": same_set(spectra["A"], -spectra["A"], tol),
        "spec(K) = spec(K+)": same_set(spectra["K"], spectra["K+"], tol),
        "spec(L) = 2 - spec(L)": same_set(spectra["L"], 2 - spectra["L"], tol),
    }
    odd = hg.odd_bipartition(G) is not None
    if odd:
        for name, ok in checks.items():
            res.check(name, True, ok, ok, tol)
    else:
        res.notes.append("not odd-bipartite")
        some_fail = not all(checks.values())
        res.check("some symmetry fails", True, some_fail, some_fail, tol)
    return res


def sign_matrix_search(G: hg.WeightedHypergraph, cap: int = hg.REDUCIBILITY_CAP):
    """Diagonal +-1 signs P != -I with A = -P^{-(k-1)} A P entrywise, or None.

    For an even order the condition on a nonzero entry is that the product of
    the signs over its index multiset is -1.
    """
    k = G.order
    if k % 2:
        raise NotEvenOrder(f"order {k} is odd")
    if G.n > cap:
        raise TooLarge(f"sign search over 2^{G.n} vectors exceeds cap 2^{cap}")
    multis = [(e.support, list(hg.edge_multisets(e.support, k))) for e in G.edges]
    full = (1 << G.n) - 1
    for mask in range(1, full):
        signs = [-1 if mask >> i & 1 else 1 for i in range(G.n)]
        if all(math.prod(signs[u] ** c for u, c in zip(S, m)) == -1 for S, ms in multis for m in ms):
            return tuple(signs)
    return None


# ---------------------------------------------------------------- duplicate vertices

def duplicate_null_vectors(G: hg.WeightedHypergraph) -> list[tuple[str, object, list]]:
    """Sign-pair vectors on duplicate classes: eigenvalue 0 for A, 1 for the Laplacians.

    Each vector is checked to have residual below 1e-10 (exactly zero for the
    rational kinds).
    """
    if G.order % 2:
        raise OddOrder(f"order {G.order} is odd")
    classes = hg.duplicate_classes(G)
    if not classes:
        raise NoDuplicates("no duplicate vertices")
    deg = G.degrees()
    kinds = [("A", Fraction(0))]
    if all(d > 0 for d in deg):
        kinds += [(kind, Fraction(1)) for kind in LAPLACIAN_KINDS]
    out = []
    for kind, lam in kinds:
        T = tz.build(G, kind)
        for cls in classes:
            members = sorted(cls)
            for j in members[1:]:
                x = [Fraction(0)] * G.n
                x[members[0]], x[j] = Fraction(1), Fraction(-1)
                r = tz.residual(T, lam if T.exact else float(lam), x)
                if r >= 1e-10:
                    raise AssertionError(f"{kind} duplicate vector residual {r}")
                out.append((kind, lam, x))
    return out


def eigenpairs(source) -> list[tuple[complex, np.ndarray]]:
    """(lam, x) pairs from a SpectrumReport, a list of PathResult, or pairs."""
    if isinstance(source, SpectrumReport):
        return [(e.value, e.representative_eigenvector) for e in source.eigenvalues]
    pairs = []
    for item in source:
        if hasattr(item, "converged"):
            if item.converged:
                pairs.append((item.lam, item.x))
        else:
            pairs.append((complex(item[0]), np.asarray(item[1], dtype=complex)))
    return pairs


def check_duplicate_constraint(G: hg.WeightedHypergraph, source, kind: str = "A",
                               tol: float = 1e-6, exempt_tol: float = 1e-6) -> TheoremCheckResult:
    res = TheoremCheckResult("duplicate")
    pairs = hg.duplicate_pairs(G)
    if not pairs:
        raise NoDuplicates("no duplicate vertices")
    exempt = 0.0 if tz.canonical_kind(kind) in ("A", "K", "K+") else 1.0
    p = G.order - 1
    for lam, x in eigenpairs(source):
        if abs(lam - exempt) <= exempt_tol * max(1.0, abs(lam)):
            continue
        x = np.asarray(x, dtype=complex)
        x = x / x[np.argmax(np.abs(x))]
        for i, j in pairs:
            gap = abs(x[i] ** p - x[j] ** p)
            res.check(f"lam={lam:.6g} x{i + 1}^{p} = x{j + 1}^{p}", 0.0, gap, gap <= tol, tol)
    return res


# ---------------------------------------------------------------- hyperflowers

@dataclass
class FlowerPrediction:
    nabla: int
    M: int
    predicted_distinct_eigenvalues_A: list[complex]
    zero_hspan: int
    conditional_roots_of_unity: list[complex] | None
    eigenvectors: list[tuple[complex, np.ndarray]]


def flower_prediction(nabla: int, M: int) -> FlowerPrediction:
    """Closed-form adjacency eigenvalues of hyperflower(nabla, M) with explicit eigenvectors.

    Equal central coordinates a and equal peripheral coordinates 1 give
    M = lam a and a^{nabla-1} = lam, so lam^nabla = M^{nabla-1}. When
    M = n (nabla - 1) + 1, peripheral coordinates lam * zeta over n full sets of
    (nabla-1)-th roots of unity plus one extra 1 give lam^nabla = 1.
    """
    if nabla < 3 or M < 1:
        raise ValueError("flower_prediction needs nabla >= 3 and M >= 1")
    k, c = nabla, nabla - 1
    N = c + M
    rot = [cmath.exp(2j * math.pi * j / k) for j in range(k)]
    main = [w * M ** ((k - 1) / k) for w in rot]
    vectors = []
    for lam in main:
        x = np.ones(N, dtype=complex)
        x[:c] = M / lam
        vectors.append((lam, x))
    cond = None
    if M % c == 1 % c:
        n = (M - 1) // c
        zetas = [1] + [cmath.exp(2j * math.pi * j / c) for j in range(c) for _ in range(n)]
        cond = list(rot)
        for lam in rot:
            x = np.ones(N, dtype=complex)
            x[c:] = [lam * z for z in zetas]
            vectors.append((lam, x))
    values = [0j] + main + [w for w in (cond or []) if not any(abs(w - u) < 1e-12 for u in main)]
    values = sorted(values, key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return FlowerPrediction(k, M, values, N, cond, vectors)


# The known characteristic polynomials of small hyperflowers, as factor lists.
FLOWER_CHARPOLYS = {
    (3, 2): {
        "A": [([1, 0, 0, -4], 3), ([1, 0], 23)],
        "K": [([1, -5, 8], 3), ([1, -1], 13), ([1, -2], 10), ([1, 0], 3)],
        "RW": [([1, -3, 3], 3), ([1, -1], 23), ([1, 0], 3)],
    },
    (3, 3): {
        "A": [([1, 0, 0, -9], 3), ([1, 1, 1], 9), ([1, -1], 9), ([1, 0], 44)],
        "K": [([1, -7, 15, -8], 9), ([1, -7, 15], 3), ([1, -1], 36), ([1, -3], 8), ([1, 0], 3)],
        "RW": [([1, -3, 3, Fraction(-8, 9)], 9), ([1, -3, 3], 3), ([1, -1], 44), ([1, 0], 3)],
    },
}


def check_flower(nabla: int, M: int, spectra: dict, tol: float = 1e-6) -> TheoremCheckResult:
    """Solver spectra of a hyperflower against the closed form and known polynomials."""
    res = TheoremCheckResult("flower")
    pred = flower_prediction(nabla, M)
    G = hg.hyperflower(nabla, M)
    if "A" in spectra:
        A = np.asarray(spectra["A"], dtype=complex)
        for lam in pred.predicted_distinct_eigenvalues_A:
            gap = float(np.min(np.abs(A - lam))) if A.size else math.inf
            res.check(f"predicted {lam:.6g} found", 0.0, gap, gap <= tol * max(1.0, abs(lam)), tol)
        T = tz.build(G, "A")
        for lam, x in pred.eigenvectors:
            r = float(tz.residual(T, lam, x))
            res.check(f"eigenvector for {lam:.6g}", 0.0, r, r < 1e-10, 1e-10)
        for lam in A:
            if abs(lam) > tol:
                res.check(f"|{lam:.6g}| <= M", M, abs(lam), abs(lam) <= M + tol, tol)
    refs = FLOWER_CHARPOLYS.get((nabla, M), {})
    for kind, values in spectra.items():
        if kind in refs:
            sub = check_eigenvalue_count_and_sum(tz.build(G, kind), refs[kind], values, tol)
            for a in sub.details:
                a.name = f"{kind} {a.name}"
                res.details.append(a)
            roots = distinct(np.concatenate([np.roots([float(c) for c in f]) for f, _ in refs[kind] if len(f) > 1]), 1e-8)
            got = np.asarray(values, dtype=complex)
            ok = same_set(roots, got, tol)
            res.check(f"{kind} distinct spectrum = reference roots", len(roots), len(got), ok, tol)
    return res


# ---------------------------------------------------------------- disjoint unions and radii

def disjoint_union_spectrum_check(G1: hg.WeightedHypergraph, G2: hg.WeightedHypergraph, kind: str = "A",
                                  seed: int = 0, options: SolveOptions | None = None,
                                  tol: float = 1e-6) -> TheoremCheckResult:
    if G1.order != G2.order:
        raise OrderMismatch(f"orders {G1.order} and {G2.order} differ")
    res = TheoremCheckResult("disjointunion")
    s1 = distinct_spectrum(tz.build(G1, kind), seed, options)
    s2 = distinct_spectrum(tz.build(G2, kind), seed, options)
    su = distinct_spectrum(tz.build(hg.disjoint_union(G1, G2), kind), seed, options)
    parts = distinct(np.concatenate([s1, s2]), 1e-8)
    res.check(f"spec({kind}) of union = union of spectra", parts, su, same_set(parts, su, tol), tol)
    res.notes.append(f"multiplicity factor of G1's eigenvalues: (k-1)^{G2.n} = {(G1.order - 1) ** G2.n}")
    return res


def check_radius(G: hg.WeightedHypergraph, tol: float = 1e-10) -> TheoremCheckResult:
    """rho(RW+) = 2 with a constant Perron vector, and delta <= rho(A) <= Delta."""
    from .spectra import spectral_radius_nonneg

    res = TheoremCheckResult("radius")
    rho, x = spectral_radius_nonneg(tz.build(G, "RW+"), tol=tol * 1e-2)
    res.check("rho(RW+) = 2", 2.0, rho, abs(rho - 2) <= tol, tol)
    res.check("RW+ Perron vector constant", 0.0, float(np.ptp(x)), np.ptp(x) <= 1e-8, 1e-8)
    prof = hg.degree_profile(G)
    rho_a, _ = spectral_radius_nonneg(tz.build(G, "A"), tol=tol * 1e-2)
    lo, hi = float(prof.delta_min), float(prof.delta_max)
    res.check("delta <= rho(A) <= Delta", [lo, hi], rho_a, lo - tol <= rho_a <= hi + tol, tol)
    return res
