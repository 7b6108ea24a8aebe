"""Solver spectra of small hyperflowers against the closed-form adjacency eigenvalues.

Also runs the disjoint union of hyperflower(3,2) with a single 3-edge.
"""
import argparse
import time

import numpy as np

from hyperspectra import analysis as an
from hyperspectra import hypergraph as hg
from hyperspectra import spectra as sp
from hyperspectra import tensor as tz


def flower(nabla, M, seed):
    t0 = time.perf_counter()
    G = hg.hyperflower(nabla, M)
    vals = sp.spectrum(tz.build(G, "A"), seed=seed).values
    spectra = {"A": vals}
    for kind in an.FLOWER_CHARPOLYS.get((nabla, M), {}):
        if kind != "A":
            spectra[kind] = sp.spectrum(tz.build(G, kind), seed=seed).values
    res = an.check_flower(nabla, M, spectra)
    pred = an.flower_prediction(nabla, M)
    extra = [v for v in vals if np.min(np.abs(np.array(pred.predicted_distinct_eigenvalues_A) - v)) > 1e-6]
    print(f"hyperflower({nabla},{M}): {nabla ** G.n} paths, {len(vals)} distinct A eigenvalues, "
          f"{len(extra)} outside the closed form, checks {'pass' if res.passed else 'FAIL'} "
          f"[{time.perf_counter() - t0:.1f}s]")
    for a in res.details:
        if not a.passed:
            print("   failed:", a.name, a.observed)
    for v in extra:
        print(f"   extra eigenvalue {v:.10g}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-union", action="store_true")
    ap.add_argument("--big", action="store_true", help="also run (4,2) and (4,3): 1024 and 4096 paths")
    args = ap.parse_args()
    cases = [(3, 1), (3, 2), (3, 3), (4, 1)] + ([(4, 2), (4, 3)] if args.big else [])
    for nabla, M in cases:
        flower(nabla, M, args.seed)
    if not args.skip_union:
        t0 = time.perf_counter()
        res = an.disjoint_union_spectrum_check(hg.hyperflower(3, 2), hg.hypergraph([[0, 1, 2]]), seed=args.seed)
        print(f"hyperflower(3,2) + 3-edge: union of spectra {'pass' if res.passed else 'FAIL'} "
              f"[{time.perf_counter() - t0:.1f}s]; {res.notes[0]}")


if __name__ == "__main__":
    main()
