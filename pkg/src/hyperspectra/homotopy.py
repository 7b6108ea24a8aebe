"""Batched projective predictor-corrector path tracking with a Cauchy endgame.

All paths of a chunk advance together: every array carries a leading batch
axis and each path keeps its own parameter value and step size. Tracking is
done on a random affine patch of projective space, so paths heading to
infinity stay bounded and simply end with a vanishing homogenizing
coordinate z0 = Y[:, 0].
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

# path status codes
OK = 0
FAILED = 1


@dataclass(frozen=True)
class TrackerOptions:
    initial_step: float = 0.05
    min_step: float = 1e-14
    max_step: float = 0.1
    max_newton: int = 3
    newton_tol: float = 1e-9
    max_steps: int = 4000
    endgame_radius: float = 0.01
    cauchy_samples: int = 8
    max_winding: int = 16
    loop_tol: float = 1e-6
    chunk_size: int = 256
    endgame_levels: int = 5
    agree_tol: float = 1e-8
    infinity_ratio: float = 1e-8


class HomogeneousTarget:
    """Square homogeneous system F(Y) = R f(Y L^T) in tracker coordinates.

    f is given by monomials in W = (z0, w_1, ..., w_q); exps[:, 0] already
    homogenizes every monomial to the equation's degree.
    """

    def __init__(self, exps, coefs, starts, degrees, L, R=None):
        self.exps = np.asarray(exps, dtype=np.int64)
        self.coefs = np.asarray(coefs, dtype=complex)
        self.starts = np.asarray(starts, dtype=np.int64)
        self.degrees = np.asarray(degrees, dtype=np.int64)
        self.L = np.asarray(L, dtype=complex)
        self.R = None if R is None else np.asarray(R, dtype=complex)
        nw = self.exps.shape[1]
        self.dmax = int(self.exps.max()) if self.exps.size else 1
        stride = self.dmax + 1
        cols = np.arange(nw) * stride
        self._flat = cols[None, :] + self.exps
        self._flat_minus = cols[None, :] + np.maximum(self.exps - 1, 0)

    @property
    def nvars(self) -> int:
        return self.L.shape[1]

    @property
    def neqs(self) -> int:
        return len(self.degrees) if self.R is None else self.R.shape[0]

    def evaluate(self, Y: np.ndarray):
        """Values (P, m) and Jacobian (P, m, m+1) at a batch of points."""
        P = Y.shape[0]
        W = Y @ self.L.T
        nw = W.shape[1]
        pw = np.empty((P, nw, self.dmax + 1), dtype=complex)
        pw[:, :, 0] = 1.0
        for d in range(1, self.dmax + 1):
            pw[:, :, d] = pw[:, :, d - 1] * W
        pw = pw.reshape(P, -1)
        G = pw[:, self._flat]  # (P, T, nw)
        vals = np.prod(G, axis=2)
        # product of all factors but one, via prefix and suffix products
        ones = np.ones((P, G.shape[1], 1), dtype=complex)
        pre = np.concatenate([ones, np.cumprod(G[:, :, :-1], axis=2)], axis=2)
        suf = np.concatenate([np.cumprod(G[:, :, :0:-1], axis=2)[:, :, ::-1], ones], axis=2)
        dvals = self.exps[None] * pw[:, self._flat_minus] * pre * suf
        f = np.add.reduceat(vals * self.coefs, self.starts, axis=1)
        Jw = np.add.reduceat(dvals * self.coefs[None, :, None], self.starts, axis=1)
        JY = Jw @ self.L
        if self.R is not None:
            f = f @ self.R.T
            JY = np.einsum("ij,pjk->pik", self.R, JY)
        return f, JY


@dataclass
class Homotopy:
    """H(Y, t) = (1 - t) gamma S(Y) + t F(Y), with S_i = y_i^{d_i} - z0^{d_i}, on the patch c.Y = 1."""
    target: HomogeneousTarget
    gamma: complex
    patch: np.ndarray

    def start_points(self) -> np.ndarray:
        degs = self.target.degrees if self.target.R is None else np.full(self.target.neqs, self.target.degrees[0])
        roots = [np.exp(2j * np.pi * np.arange(d) / d) for d in degs]
        grid = np.array(np.meshgrid(*roots, indexing="ij")).reshape(len(degs), -1).T
        Y = np.concatenate([np.ones((grid.shape[0], 1), dtype=complex), grid], axis=1)
        return Y / (Y @ self.patch)[:, None]

    @property
    def start_degrees(self) -> np.ndarray:
        if self.target.R is None:
            return self.target.degrees
        return np.full(self.target.neqs, int(self.target.degrees.max()))

    def _start(self, Y):
        d = self.start_degrees
        z0 = Y[:, :1]
        y = Y[:, 1:]
        S = y**d - z0**d
        J = np.zeros((Y.shape[0], len(d), Y.shape[1]), dtype=complex)
        J[:, :, 0] = -d * z0 ** (d - 1)
        idx = np.arange(len(d))
        J[:, idx, idx + 1] = d * y ** (d - 1)
        return S, J

    def evaluate(self, Y, t):
        """H, dH/dY and dH/dt including the patch row; t is a (P,) complex array."""
        S, JS = self._start(Y)
        F, JF = self.target.evaluate(Y)
        a = ((1 - t) * self.gamma)[:, None]
        b = t[:, None]
        H = np.concatenate([a * S + b * F, (Y @ self.patch - 1)[:, None]], axis=1)
        HY = a[:, :, None] * JS + b[:, :, None] * JF
        HY = np.concatenate([HY, np.broadcast_to(self.patch, (Y.shape[0], 1, Y.shape[1]))], axis=1)
        Ht = np.concatenate([-self.gamma * S + F, np.zeros((Y.shape[0], 1), dtype=complex)], axis=1)
        return H, HY, Ht


def _solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(A, b[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.empty_like(b)
        for i in range(A.shape[0]):
            out[i] = np.linalg.lstsq(A[i], b[i], rcond=None)[0]
        return out


class _Line:
    """t(s) = s."""

    @staticmethod
    def t(s):
        return s.astype(complex)

    @staticmethod
    def dt(s):
        return np.ones_like(s, dtype=complex)


class _Circle:
    """t(theta) = 1 - r exp(i theta)."""

    def __init__(self, r: float):
        self.r = r

    def t(self, s):
        return 1 - self.r * np.exp(1j * s)

    def dt(self, s):
        return -1j * self.r * np.exp(1j * s)


def _velocity(hom, Y, s, path):
    _, HY, Ht = hom.evaluate(Y, path.t(s))
    return -_solve(HY, Ht * path.dt(s)[:, None])


def _correct(hom, Y, t, opts, iters=None, tol=None):
    iters = opts.max_newton if iters is None else iters
    tol = opts.newton_tol if tol is None else tol
    P = Y.shape[0]
    conv = np.zeros(P, dtype=bool)
    bad = np.zeros(P, dtype=bool)
    prev = np.full(P, np.inf)
    Y = Y.copy()
    for _ in range(iters):
        live = ~conv & ~bad
        if not live.any():
            break
        H, HY, _ = hom.evaluate(Y[live], t[live])
        dY = _solve(HY, -H)
        Y[live] += dY
        d = np.linalg.norm(dY, axis=1)
        scale = np.linalg.norm(Y[live], axis=1)
        idx = np.nonzero(live)[0]
        bad[idx] |= (d > 0.5 * prev[idx]) | ~np.isfinite(d)
        conv[idx] |= (d <= tol * scale) & ~bad[idx]
        prev[idx] = d
    return Y, conv & ~bad


def track(hom: Homotopy, Y: np.ndarray, s0, s1, path, opts: TrackerOptions, h0=None):
    """Track a batch from parameter s0 to s1 along `path`. Returns (Y, ok, steps)."""
    P = Y.shape[0]
    Y = Y.copy()
    s = np.broadcast_to(np.asarray(s0, dtype=float), (P,)).copy()
    s1 = np.broadcast_to(np.asarray(s1, dtype=float), (P,)).copy()
    h = np.full(P, opts.initial_step if h0 is None else h0)
    streak = np.zeros(P, dtype=np.int64)
    steps = np.zeros(P, dtype=np.int64)
    active = s < s1
    ok = np.ones(P, dtype=bool)
    while active.any():
        idx = np.nonzero(active)[0]
        Yi, si = Y[idx], s[idx]
        remaining = s1[idx] - si
        hi = np.minimum(h[idx], remaining)
        last = hi >= remaining
        # RK4 predictor
        k1 = _velocity(hom, Yi, si, path)
        k2 = _velocity(hom, Yi + 0.5 * hi[:, None] * k1, si + 0.5 * hi, path)
        k3 = _velocity(hom, Yi + 0.5 * hi[:, None] * k2, si + 0.5 * hi, path)
        k4 = _velocity(hom, Yi + hi[:, None] * k3, si + hi, path)
        Yp = Yi + (hi / 6)[:, None] * (k1 + 2 * k2 + 2 * k3 + k4)
        snew = np.where(last, s1[idx], si + hi)
        Yc, good = _correct(hom, Yp, path.t(snew), opts)
        steps[idx] += 1

        acc = idx[good]
        Y[acc] = Yc[good]
        s[acc] = snew[good]
        streak[acc] += 1
        grow = acc[streak[acc] >= 3]
        h[grow] = np.minimum(2 * h[grow], opts.max_step)
        streak[grow] = 0

        rej = idx[~good]
        h[rej] *= 0.5
        streak[rej] = 0

        done = s >= s1
        dead = (h < opts.min_step) | (steps >= opts.max_steps)
        ok &= ~(dead & ~done)
        active = ~done & ~dead & ok
    return Y, ok, steps


def _cauchy(hom, Y_eg, opts):
    """Cauchy endgame around t = 1 starting from points at t = 1 - r."""
    P = Y_eg.shape[0]
    N = opts.cauchy_samples
    circle = _Circle(opts.endgame_radius)
    total = Y_eg.copy()
    cur = Y_eg.copy()
    winding = np.zeros(P, dtype=np.int64)
    steps = np.zeros(P, dtype=np.int64)
    live = np.ones(P, dtype=bool)
    ok = np.ones(P, dtype=bool)
    theta0 = 0.0
    for c in range(1, opts.max_winding + 1):
        idx = np.nonzero(live)[0]
        if not idx.size:
            break
        for j in range(N):
            a = theta0 + 2 * np.pi * j / N
            b = theta0 + 2 * np.pi * (j + 1) / N
            Yn, good, st = track(hom, cur[idx], a, b, circle, opts, h0=2 * np.pi / N)
            steps[idx] += st
            bad = idx[~good]
            ok[bad] = False
            live[bad] = False
            keep = good
            idx, Yn = idx[keep], Yn[keep]
            cur[idx] = Yn
            if j < N - 1:
                total[idx] += Yn
        theta0 += 2 * np.pi
        back = np.linalg.norm(cur[idx] - Y_eg[idx], axis=1) <= opts.loop_tol * np.linalg.norm(Y_eg[idx], axis=1)
        closed = idx[back]
        winding[closed] = c
        live[closed] = False
        # the closing sample equals the first one and is already counted
        still = idx[~back]
        total[still] += cur[still]
    ok &= winding > 0
    samples = np.maximum(winding, 1) * N
    return total / samples[:, None], ok, winding, steps


def _track_chunk(args):
    """Line tracking to the first endgame radius, then Cauchy loops on shrinking radii.

    A path is resolved once its loops close with winding 1 and Newton at t = 1
    converges, or once two consecutive radii give agreeing Cauchy estimates.
    Paths whose homogenizing coordinate collapses are left as points at infinity.
    """
    hom, Y0, opts = args
    P = Y0.shape[0]
    radii = opts.endgame_radius * 0.1 ** np.arange(opts.endgame_levels)
    Y, ok, steps = track(hom, Y0, 0.0, 1.0 - radii[0], _Line, opts)
    Yend = Y.copy()
    status = np.where(ok, OK, FAILED)
    winding = np.zeros(P, dtype=np.int64)
    prev = np.full(Y.shape, np.nan, dtype=complex)
    todo = np.nonzero(ok)[0]
    for level, r in enumerate(radii):
        if level:
            Yn, good, st = track(hom, Y[todo], 1.0 - radii[level - 1], 1.0 - r, _Line, opts)
            steps[todo] += st
            status[todo[~good]] = FAILED
            Yend[todo[~good]] = Yn[~good]
            Y[todo[good]] = Yn[good]
            todo = todo[good]
        Yend[todo] = Y[todo]
        ratio = np.abs(Y[todo, 0]) / np.abs(Y[todo]).max(axis=1)
        todo = todo[ratio > opts.infinity_ratio]
        if not todo.size:
            break
        E, closed, wind, st = _cauchy(hom, Y[todo], replace(opts, endgame_radius=r))
        steps[todo] += st
        winding[todo] = wind
        Yend[todo[closed]] = E[closed]
        done = np.zeros(todo.size, dtype=bool)
        simple = np.nonzero(closed & (wind == 1))[0]
        if simple.size:
            Yp, conv = _correct(hom, E[simple], np.ones(simple.size, dtype=complex), opts, iters=4, tol=1e-13)
            Yend[todo[simple[conv]]] = Yp[conv]
            done[simple[conv]] = True
        agree = np.linalg.norm(E - prev[todo], axis=1) <= opts.agree_tol * np.linalg.norm(E, axis=1)
        done |= closed & agree
        prev[todo[closed]] = E[closed]
        todo = todo[~done]
    return Yend, status, winding, steps


def solve_homotopy(target: HomogeneousTarget, rng: np.random.Generator, opts: TrackerOptions = TrackerOptions(),
                   workers: int = 1):
    """Track every total-degree start path of `target`.

    Returns (Y endpoints, status, winding, steps, homotopy). Results depend
    only on the random generator, never on the worker count: the chunk
    layout is fixed by opts.chunk_size.
    """
    m1 = target.nvars
    gamma = complex(np.exp(2j * np.pi * rng.random()))
    patch = rng.standard_normal(m1) + 1j * rng.standard_normal(m1)
    patch /= np.linalg.norm(patch)
    hom = Homotopy(target, gamma, patch)
    Y0 = hom.start_points()
    chunks = [(hom, Y0[i:i + opts.chunk_size], opts) for i in range(0, len(Y0), opts.chunk_size)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_track_chunk, chunks))
    else:
        parts = [_track_chunk(c) for c in chunks]
    Y = np.concatenate([p[0] for p in parts])
    status = np.concatenate([p[1] for p in parts])
    winding = np.concatenate([p[2] for p in parts])
    steps = np.concatenate([p[3] for p in parts])
    return Y, status, winding, steps, hom


def total_degree(degrees) -> int:
    return math.prod(int(d) for d in degrees)
