"""Real eigenpairs that fall outside the tighter Laplacian bounds.

K of K2 and of the two-edge example exceed the maximum degree, and L of a
non-uniform hypergraph has a negative eigenvalue and a spectrum different
from RW. Each pair is printed with its residual.
"""
import numpy as np

from hyperspectra import hypergraph as hg
from hyperspectra import spectra as sp
from hyperspectra import tensor as tz


def show(name, T, pairs, delta):
    for lam, x in pairs:
        print(f"{name}: lam = {lam:.12f} (Delta = {delta}), x = {np.round(x, 6)}, "
              f"residual = {tz.residual(T, lam, x):.1e}")


def main():
    for name, G in (("K2", hg.hypergraph([[0, 1]])),
                    ("two-edge", hg.hypergraph([[0, 1], [0, 1, 2]], weights=[1, 2]))):
        T = tz.build(G, "K")
        delta = max(G.degrees())
        show(f"K of {name}", T, [(l, x) for l, x in sp.h_eigen_search(T, seed=1) if l > delta + 1e-9], delta)

    G = hg.hypergraph([[0, 1, 2], [0, 1, 3], [1, 3], [2, 3]], weights=["1/2", 1, 2, "3/2"])
    T = tz.build(G, "L")
    show("L of non-uniform", T, [(l, x) for l, x in sp.h_eigen_search(T, seed=0) if l < 0], "-")
    sl = sp.spectrum(T, seed=0).values
    sr = sp.spectrum(tz.build(G, "RW"), seed=0).values
    gap = max(np.min(np.abs(sr - v)) for v in sl)
    print(f"distinct spec(L) vs spec(RW): {len(sl)} vs {len(sr)} values, max gap {gap:.3f}")


if __name__ == "__main__":
    main()
