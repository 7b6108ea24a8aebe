from fractions import Fraction as F

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from hyperspectra import hypergraph as hg
from hyperspectra import system as sy
from hyperspectra import tensor as tz

from conftest import weighted_hypergraphs


def poly(**terms):
    """Monomials as name -> coefficient, names like 'x1^3*l' over x1..x5 and l."""
    out = {}
    for name, c in terms.items():
        e = [0] * 6
        for factor in name.split("_"):
            var, _, p = factor.partition("e")
            idx = 5 if var == "l" else int(var[1:]) - 1
            e[idx] += int(p or 1)
        out[tuple(e)] = c
    return out


PROTEIN = [
    poly(l_x1e3=-1, x2_x3_x4=1, x1e2_x5=F(3, 7), x1_x5e2=F(3, 7), x5e3=F(1, 7)),
    poly(l_x2e3=-1, x1_x3_x4=1),
    poly(l_x3e3=-1, x1_x2_x4=1, x3e2_x5=F(3, 7), x3_x5e2=F(3, 7), x5e3=F(1, 7)),
    poly(l_x4e3=-1, x1_x2_x3=1),
    poly(l_x5e3=-1, x1e3=F(1, 7), x3e3=F(1, 7), x1e2_x5=F(3, 7), x3e2_x5=F(3, 7), x1_x5e2=F(3, 7), x3_x5e2=F(3, 7)),
]


def test_protein_system_is_exact(protein):
    S = sy.assemble(tz.build(protein, "A"), 0, seed=3)
    assert [dict(p) for p in S.polynomials] == PROTEIN
    assert S.bezout_number() == 4**5
    assert S.num_slices == 1 and S.slice_consts[0] != 0


def test_k2_system():
    S = sy.assemble(tz.build(hg.hypergraph([[0, 1]]), "A"), 0, seed=0)
    assert [dict(p) for p in S.polynomials] == [{(0, 1, 0): 1, (1, 0, 1): -1}, {(1, 0, 0): 1, (0, 1, 1): -1}]


@given(weighted_hypergraphs(max_n=5), st.sampled_from(["A", "K", "RW+", "L"]), st.integers(0, 1000))
def test_polynomials_match_contraction(G, kind, seed):
    T = tz.build(G, kind)
    S = sy.assemble(T, 0, seed)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(G.n) + 1j * rng.standard_normal(G.n)
    lam = complex(rng.standard_normal(), rng.standard_normal())
    direct = tz.contract(T, x) - lam * x ** (T.order - 1)
    assert np.allclose(S.evaluate(x, lam)[: G.n], direct, rtol=1e-10, atol=1e-10)
    for p in S.polynomials:
        assert max(sum(e) for e, _ in p) == T.order
        assert max(sum(e[:-1]) for e, _ in p) == T.order - 1


def test_slices_and_jacobian():
    T = tz.build(hg.hyperflower(3, 2), "A")
    S = sy.assemble(T, 2, seed=11)
    assert S.num_slices == 3 and S.num_homogeneous_slices == 2
    assert np.all(S.slice_consts[1:] == 0)
    x = np.array([0.3 + 0.1j, -0.2, 0.7j, 1.1])
    lam = 0.4 - 0.2j
    J = sy.jacobian(S, x, lam)
    h = 1e-6
    for j in range(5):
        dx = np.zeros(4, dtype=complex)
        dl = 0
        if j < 4:
            dx[j] = h
        else:
            dl = h
        fd = (S.evaluate(x + dx, lam + dl) - S.evaluate(x - dx, lam - dl)) / (2 * h)
        assert np.allclose(J[:, j], fd, atol=1e-6)


def test_seeded_slices_are_reproducible():
    T = tz.build(hg.hyperflower(3, 2), "A")
    a, b = sy.assemble(T, 1, seed=5), sy.assemble(T, 1, seed=5)
    assert np.array_equal(a.slice_coeffs, b.slice_coeffs)
    assert not np.array_equal(a.slice_coeffs, sy.assemble(T, 1, seed=6).slice_coeffs)


def test_format_polynomial():
    S = sy.assemble(tz.build(hg.hypergraph([[0, 1]]), "A"), 0)
    assert sy.format_polynomial(S.polynomials[0], 2) == "1*x2 + -1*x1*l"
