"""Polynomial eigenpair systems T x^{k-1} - lam x^{[k-1]} = 0 plus linear slices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .hypergraph import compositions
from .tensor import HypergraphTensor


@dataclass(frozen=True)
class EigenSystem:
    """Eigen polynomials in (x_1..x_n, lam) and linear slices in x.

    polynomials[i] is a list of (exponents, coefficient); exponents has n+1
    entries, the last one being the power of lam. slices[0] is affine
    (a . x + b with b != 0); the remaining slices are homogeneous.
    """
    n: int
    k: int
    polynomials: tuple
    slice_coeffs: np.ndarray  # (s, n) complex
    slice_consts: np.ndarray  # (s,) complex
    tensor: HypergraphTensor = field(repr=False)
    seed: int | None = None

    @property
    def num_slices(self) -> int:
        return len(self.slice_consts)

    @property
    def num_homogeneous_slices(self) -> int:
        return self.num_slices - 1

    def degrees(self) -> list[int]:
        return [self.k] * self.n + [1] * self.num_slices

    def bezout_number(self) -> int:
        return self.k**self.n

    def evaluate(self, x, lam) -> np.ndarray:
        """Values of all n eigen polynomials followed by all slices."""
        z = np.append(np.asarray(x, dtype=complex), complex(lam))
        vals = [sum(complex(c) * np.prod(z**np.array(e)) for e, c in poly) for poly in self.polynomials]
        sl = self.slice_coeffs @ z[:-1] + self.slice_consts
        return np.concatenate([np.array(vals, dtype=complex), sl])

    def monomial_arrays(self):
        """(exponents (T, n+1), coefficients (T,), equation start offsets)."""
        exps, coefs, starts = [], [], []
        for poly in self.polynomials:
            starts.append(len(exps))
            for e, c in poly:
                exps.append(e)
                coefs.append(complex(c))
        return np.array(exps, dtype=np.int64), np.array(coefs, dtype=complex), np.array(starts, dtype=np.int64)


def covering_monomials(row: int, support, p: int):
    """Monomials of sum over ordered p-tuples from `support` covering support - {row}.

    Yields (exponent dict, count); count is the multinomial p!/prod(alpha!).
    """
    others = [u for u in support if u != row]
    if row in support:
        # row index may or may not repeat inside the tuple
        options = [others, others + [row]]
    else:
        options = [others]
    for verts in options:
        if len(verts) > p:
            continue
        for alpha in compositions(p, len(verts)):
            count = factorial(p)
            for a in alpha:
                count //= factorial(a)
            yield dict(zip(verts, alpha)), count


def eigen_polynomials(T: HypergraphTensor) -> list[list]:
    n, k = T.dim, T.order
    p = k - 1
    polys = []
    for i in range(n):
        terms: dict[tuple, object] = {}

        def add(expo: dict, coeff):
            key = tuple(expo.get(j, 0) for j in range(n)) + (expo.get("lam", 0),)
            terms[key] = terms.get(key, 0) + coeff

        if T.diagonal[i] != 0:
            add({i: p}, T.diagonal[i])
        for S, c in T.rows[i]:
            for expo, count in covering_monomials(i, S, p):
                add(expo, c * count)
        add({i: p, "lam": 1}, -1)
        polys.append([(e, c) for e, c in sorted(terms.items()) if c != 0])
    return polys


def random_slices(n: int, num_homogeneous: int, rng: np.random.Generator, real: bool = False):
    s = 1 + num_homogeneous
    if real:
        A = rng.standard_normal((s, n)).astype(complex)
        b = np.zeros(s, dtype=complex)
        b[0] = rng.standard_normal() + np.sign(rng.standard_normal()) * 0.5
    else:
        A = (rng.standard_normal((s, n)) + 1j * rng.standard_normal((s, n))) / np.sqrt(2)
        b = np.zeros(s, dtype=complex)
        b[0] = (rng.standard_normal() + 1j * rng.standard_normal()) / np.sqrt(2)
    return A, b


def assemble(T: HypergraphTensor, num_homogeneous_slices: int = 0, seed: int | None = 0,
             real: bool = False) -> EigenSystem:
    rng = np.random.default_rng(seed)
    A, b = random_slices(T.dim, num_homogeneous_slices, rng, real=real)
    return EigenSystem(T.dim, T.order, tuple(eigen_polynomials(T)), A, b, T, seed)


def format_polynomial(poly, n: int) -> str:
    """Human-readable rendering, variables x1..xn and l."""
    names = [f"x{j + 1}" for j in range(n)] + ["l"]
    parts = []
    for e, c in poly:
        mono = "*".join(f"{names[j]}^{a}" if a > 1 else names[j] for j, a in enumerate(e) if a)
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        parts.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(parts)


def jacobian(system: EigenSystem, x, lam) -> np.ndarray:
    """Jacobian of eigen polynomials and slices with respect to (x, lam)."""
    z = np.append(np.asarray(x, dtype=complex), complex(lam))
    n = system.n
    J = np.zeros((n + system.num_slices, n + 1), dtype=complex)
    for i, poly in enumerate(system.polynomials):
        for e, c in poly:
            e = np.array(e)
            for j in np.nonzero(e)[0]:
                d = e.copy()
                d[j] -= 1
                J[i, j] += complex(c) * e[j] * np.prod(z**d)
    J[n:, :n] = system.slice_coeffs
    return J

