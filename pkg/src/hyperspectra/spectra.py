"""Tensor spectra by total-degree homotopy continuation.

A linear slice is substituted into the eigen system through an explicit
parametrization x = x0 + B u of the sliced subspace, so the tracked square
system has n - j equations in (u, lam) when j homogeneous slices are added.
With j > 0 the eigen polynomials are randomized down to n - j equations and
every endpoint is verified against the full system.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import tensor as tz
from .errors import Inconclusive, NoConvergence, NotConnected, NotNonnegative, PathBudgetExceeded
from .homotopy import FAILED, HomogeneousTarget, TrackerOptions, solve_homotopy
from .system import EigenSystem, assemble


@dataclass(frozen=True)
class SolveOptions:
    tracker: TrackerOptions = field(default_factory=TrackerOptions)
    dedup_tol: float = 1e-8
    real_threshold: float = 1e-10
    residual_tol: float = 1e-8
    singular_cond: float = 1e12
    singular_merge_tol: float = 1e-6
    infinity_tol: float = 1e-7
    paths_budget: int = 200_000
    workers: int = 1


@dataclass
class PathResult:
    endpoint: np.ndarray  # (x_1..x_n, lam); empty when the path went to infinity or failed
    converged: bool
    singular: bool
    winding_estimate: int
    condition_estimate: float
    residual: float
    at_infinity: bool = False
    failed: bool = False
    steps: int = 0

    @property
    def x(self) -> np.ndarray:
        return self.endpoint[:-1]

    @property
    def lam(self) -> complex:
        return complex(self.endpoint[-1])


@dataclass
class Eigenvalue:
    value: complex
    is_real: bool
    from_singular_endpoint: bool
    representative_eigenvector: np.ndarray
    residual: float
    count: int = 1
    geometric_multiplicity: int | None = None


@dataclass
class SpectrumReport:
    eigenvalues: list[Eigenvalue]
    stats: dict

    @property
    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.eigenvalues], dtype=complex)

    def real_values(self) -> np.ndarray:
        return np.array([e.value.real for e in self.eigenvalues if e.is_real])

    @property
    def possibly_incomplete(self) -> bool:
        return bool(self.stats.get("possibly_incomplete", False))


def _parametrize(system: EigenSystem):
    A, b = system.slice_coeffs, system.slice_consts
    x0 = np.linalg.lstsq(A, -b, rcond=None)[0]
    _, _, Vh = np.linalg.svd(A)
    B = Vh[A.shape[0]:].conj().T
    return x0, B


def _homogeneous_target(system: EigenSystem, rng: np.random.Generator):
    n, k = system.n, system.k
    exps, coefs, starts = system.monomial_arrays()
    z0 = k - exps.sum(axis=1)
    hexps = np.concatenate([z0[:, None], exps], axis=1)
    x0, B = _parametrize(system)
    q = B.shape[1]
    L = np.zeros((n + 2, q + 2), dtype=complex)
    L[0, 0] = 1
    L[1:n + 1, 0] = x0
    L[1:n + 1, 1:q + 1] = B
    L[n + 1, q + 1] = 1
    j = system.num_homogeneous_slices
    R = None
    if j > 0:
        R = (rng.standard_normal((n - j, n)) + 1j * rng.standard_normal((n - j, n))) / np.sqrt(2 * n)
    target = HomogeneousTarget(hexps, coefs, starts, [k] * n, L, R)
    return target, x0, B


class _AffineEvaluator:
    """Eigen polynomials and slices at affine points (x, lam), batched."""

    def __init__(self, system: EigenSystem):
        exps, coefs, starts = system.monomial_arrays()
        n = system.n
        hexps = np.concatenate([np.zeros((len(exps), 1), dtype=np.int64), exps], axis=1)
        self.poly = HomogeneousTarget(hexps, coefs, starts, [system.k] * n, np.eye(n + 2))
        self.A, self.b = system.slice_coeffs, system.slice_consts
        self.n = n

    def __call__(self, Z):
        P = Z.shape[0]
        Y = np.concatenate([np.ones((P, 1), dtype=complex), Z], axis=1)
        f, J = self.poly.evaluate(Y)
        J = J[:, :, 1:]
        sl = Z[:, :-1] @ self.A.T + self.b
        Js = np.zeros((P, len(self.b), self.n + 1), dtype=complex)
        Js[:, :, :-1] = self.A
        return np.concatenate([f, sl], axis=1), np.concatenate([J, Js], axis=1)


def _refine(evaluate, Z, iters=100):
    """Gauss-Newton with a truncated pseudo-inverse (copes with rank-deficient endpoints)."""
    Z = Z.copy()
    live = np.ones(Z.shape[0], dtype=bool)
    for _ in range(iters):
        if not live.any():
            break
        r, J = evaluate(Z[live])
        dZ = -np.einsum("pij,pj->pi", np.linalg.pinv(J, rcond=1e-11), r)
        ok = np.isfinite(dZ).all(axis=1)
        dZ[~ok] = 0
        idx = np.nonzero(live)[0]
        Z[idx] += dZ
        small = np.linalg.norm(dZ, axis=1) <= 1e-15 * (1 + np.linalg.norm(Z[idx], axis=1))
        live[idx[small | ~ok]] = False
    r, J = evaluate(Z)
    s = np.linalg.svd(J, compute_uv=False)
    with np.errstate(divide="ignore"):
        cond = np.where(s[:, -1] > 0, s[:, 0] / s[:, -1], np.inf)
    return Z, cond


def solve(system: EigenSystem, options: SolveOptions | None = None) -> list[PathResult]:
    """Track every total-degree path of the sliced eigen system and refine the endpoints."""
    options = options or SolveOptions()
    n, k = system.n, system.k
    j = system.num_homogeneous_slices
    npaths = k ** (n - j)
    if npaths > options.paths_budget:
        raise PathBudgetExceeded(f"{npaths} paths exceed the budget of {options.paths_budget}")
    rng = np.random.default_rng([system.seed if system.seed is not None else 0, 7919, j])
    target, x0, B = _homogeneous_target(system, rng)
    Y, status, winding, steps, _ = solve_homotopy(target, rng, options.tracker, options.workers)

    z0 = Y[:, 0]
    scale = np.abs(Y).max(axis=1)
    infinite = (np.abs(z0) <= options.infinity_tol * scale) & (status != FAILED)
    finite = (status != FAILED) & ~infinite
    results: list[PathResult] = []
    Z = np.zeros((Y.shape[0], n + 1), dtype=complex)
    fidx = np.nonzero(finite)[0]
    if fidx.size:
        u = Y[fidx, 1:-1] / z0[fidx, None]
        Z[fidx, :n] = x0 + u @ B.T
        Z[fidx, n] = Y[fidx, -1] / z0[fidx]
        Zr, cond = _refine(_AffineEvaluator(system), Z[fidx])
        Z[fidx] = Zr
        conds = np.full(Y.shape[0], np.inf)
        conds[fidx] = cond
    T = system.tensor
    for p in range(Y.shape[0]):
        if not finite[p]:
            results.append(PathResult(np.empty(0, dtype=complex), False, False, int(winding[p]), math.inf,
                                      math.inf, at_infinity=bool(infinite[p]), failed=status[p] == FAILED,
                                      steps=int(steps[p])))
            continue
        z = Z[p]
        if not np.isfinite(z).all() or np.abs(z[:n]).max() == 0:
            results.append(PathResult(z, False, True, int(winding[p]), math.inf, math.inf, steps=int(steps[p])))
            continue
        res = float(tz.residual(T, z[n], z[:n]))
        cond = float(conds[p])
        singular = cond > options.singular_cond or winding[p] > 1
        results.append(PathResult(z, res < options.residual_tol, bool(singular), int(winding[p]), cond, res,
                                  steps=int(steps[p])))
    return results


def _cluster(values: np.ndarray, tol: float) -> list[list[int]]:
    """Group values closer than tol * max(1, |value|), closing transitively."""
    n = len(values)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if n:
        D = np.abs(values[:, None] - values[None, :])
        lim = tol * np.maximum(1.0, np.maximum(np.abs(values)[:, None], np.abs(values)[None, :]))
        for a, b in zip(*np.nonzero(np.triu(D <= lim, 1))):
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _absorb_singular(groups, good, lams, tol):
    """Fold clusters made only of singular endpoints into a neighbouring cluster.

    Eigenvalues reached through singular endpoints are only accurate to roughly
    the square root of the working precision, so a singular-only cluster within
    tol * max(1, |lam|) of another cluster is taken to be the same eigenvalue.
    """
    def rank(g):
        return (len(g), -min(good[i].residual for i in g))

    groups = sorted(groups, key=rank)
    alive = [True] * len(groups)
    for a, g in enumerate(groups):
        if not all(good[i].singular for i in g):
            continue
        va = lams[min(g, key=lambda i: good[i].residual)]
        best = None
        for b, h in enumerate(groups):
            if b == a or not alive[b]:
                continue
            d = np.min(np.abs(lams[h] - va))
            if d <= tol * max(1.0, abs(va)) and (best is None or rank(h) > rank(groups[best])):
                best = b
        if best is not None and rank(groups[best]) >= rank(g):
            groups[best] = groups[best] + g
            alive[a] = False
    return [g for g, keep in zip(groups, alive) if keep]


def classify(results: list[PathResult], options: SolveOptions | None = None, seed=None) -> SpectrumReport:
    options = options or SolveOptions()
    good = [r for r in results if r.converged]
    lams = np.array([r.lam for r in good], dtype=complex)
    eigs = []
    for group in _absorb_singular(_cluster(lams, options.dedup_tol), good, lams, options.singular_merge_tol):
        best = min(group, key=lambda i: (good[i].singular, good[i].residual))
        r = good[best]
        lam = r.lam
        x = r.x / r.x[np.argmax(np.abs(r.x))]
        eigs.append(Eigenvalue(
            value=lam,
            is_real=abs(lam.imag) < options.real_threshold * max(1.0, abs(lam)),
            from_singular_endpoint=any(good[i].singular for i in group),
            representative_eigenvector=x,
            residual=r.residual,
            count=len(group),
        ))
    eigs.sort(key=lambda e: (e.value.real, e.value.imag))
    failures = sum(r.failed for r in results)
    stats = {
        "paths": len(results),
        "converged": len(good),
        "at_infinity": sum(r.at_infinity for r in results),
        "singular": sum(r.singular for r in good),
        "nonconverged": sum(not r.converged and not r.at_infinity and not r.failed for r in results),
        "failures": failures,
        "seed": seed,
        "possibly_incomplete": failures > 0.01 * max(1, len(results)),
    }
    return SpectrumReport(eigs, stats)


def spectrum(T: tz.HypergraphTensor, seed: int = 0, options: SolveOptions | None = None,
             real_slice: bool = False) -> SpectrumReport:
    system = assemble(T, 0, seed, real=real_slice)
    return classify(solve(system, options), options, seed)


def merge(reports: list[SpectrumReport], options: SolveOptions | None = None) -> SpectrumReport:
    """Union of several runs' distinct eigenvalues, deduplicated again."""
    options = options or SolveOptions()
    eigs = [e for rep in reports for e in rep.eigenvalues]
    vals = np.array([e.value for e in eigs], dtype=complex)
    out = []
    for group in _cluster(vals, options.dedup_tol):
        best = min(group, key=lambda i: eigs[i].residual)
        e = replace(eigs[best])
        e.count = sum(eigs[i].count for i in group)
        e.from_singular_endpoint = any(eigs[i].from_singular_endpoint for i in group)
        out.append(e)
    out.sort(key=lambda e: (e.value.real, e.value.imag))
    stats = {
        "runs": len(reports),
        "paths": sum(r.stats["paths"] for r in reports),
        "failures": sum(r.stats["failures"] for r in reports),
        "seed": [r.stats.get("seed") for r in reports],
        "possibly_incomplete": all(r.possibly_incomplete for r in reports),
    }
    return SpectrumReport(out, stats)


def _has_value(T, lam, num_slices, seed, options) -> bool:
    system = assemble(T, num_slices, seed)
    results = solve(system, options)
    lams = np.array([r.lam for r in results if r.converged], dtype=complex)
    if not lams.size:
        return False
    return bool(np.any(np.abs(lams - lam) <= options.dedup_tol * max(1.0, abs(lam)) * 100))


def geometric_multiplicity(T: tz.HypergraphTensor, lam: complex, seed: int = 0,
                           options: SolveOptions | None = None, trace: list | None = None) -> int:
    """Dimension of the eigenvariety of lam by repeated generic slicing.

    With j homogeneous slices added, a surviving solution at lam means
    gm >= j + 1; the first j without one gives gm = j. Each level is run
    with two seeds, and disagreement raises Inconclusive.
    """
    options = options or SolveOptions()
    lam = complex(lam)
    for j in range(1, T.dim):
        found = [_has_value(T, lam, j, s, options) for s in (seed, seed + 104729)]
        if trace is not None:
            trace.append((j, found))
        if found[0] != found[1]:
            raise Inconclusive(f"slice level {j}: seeded runs disagree {found}")
        if not found[0]:
            return j
    return T.dim


def h_eigen_search(T: tz.HypergraphTensor, seed: int = 0, options: SolveOptions | None = None,
                   tol: float = 1e-8):
    """Real eigenpairs found with a real generic affine slice."""
    options = options or SolveOptions()
    system = assemble(T, 0, seed, real=True)
    out = []
    for r in solve(system, options):
        if not r.converged:
            continue
        lam, x = r.lam, r.x
        scale = np.abs(x).max()
        if abs(lam.imag) <= tol * max(1.0, abs(lam)) and np.abs(x.imag).max() <= tol * scale:
            out.append((lam.real, x.real / x.real[np.argmax(np.abs(x.real))]))
    return out


def spectral_radius_nonneg(T: tz.HypergraphTensor, tol: float = 1e-12, max_iter: int = 100_000,
                           shift: float = 1.0):
    """Perron root of a nonnegative weakly irreducible tensor by shifted power iteration.

    Iterates x <- (T' x^{k-1})^{[1/(k-1)]} for T' = T + shift * I, whose
    Perron vector is that of T; the shift makes the iteration primitive.
    Returns (rho, x) with x positive and max(x) = 1.
    """
    if not tz.is_nonnegative(T):
        raise NotNonnegative(f"{T.kind} tensor has negative entries")
    if not tz.is_weakly_irreducible(T):
        raise NotConnected("tensor is not weakly irreducible")
    N = T.numeric()
    p = N.order - 1
    x = np.ones(N.dim)
    for _ in range(max_iter):
        y = tz.contract(N, x).real + shift * x**p
        ratios = y / x**p
        lo, hi = ratios.min(), ratios.max()
        x = y ** (1.0 / p)
        x /= x.max()
        if hi - lo <= tol * max(1.0, hi):
            return 0.5 * (lo + hi) - shift, x
    raise NoConvergence(f"power iteration gap {hi - lo:.3e} after {max_iter} iterations")


def matrix_oracle(T: tz.HypergraphTensor) -> np.ndarray:
    """All N eigenvalues (with multiplicity) of an order-2 tensor, by dense LAPACK."""
    M = tz.as_matrix(T)
    if T.symmetric:
        return np.linalg.eigvalsh(M).astype(complex)
    return np.linalg.eigvals(M).astype(complex)
