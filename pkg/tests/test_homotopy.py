import numpy as np
import pytest

from hyperspectra import homotopy as ho


def quadratic_target():
    """x^2 - z^2 = 0, y^2 - 4 z^2 = 0 in W = (z, x, y): roots (+-1, +-2)."""
    exps = np.array([[0, 2, 0], [2, 0, 0], [0, 0, 2], [2, 0, 0]])
    coefs = np.array([1, -1, 1, -4], dtype=complex)
    return ho.HomogeneousTarget(exps, coefs, [0, 2], [2, 2], np.eye(3))


def cubic_with_infinity():
    """x^3 - z^3 = 0 and x*y^2 - z^3 = 0: three finite roots, the rest at infinity."""
    exps = np.array([[0, 3, 0], [3, 0, 0], [0, 1, 2], [3, 0, 0]])
    coefs = np.array([1, -1, 1, -1], dtype=complex)
    return ho.HomogeneousTarget(exps, coefs, [0, 2], [3, 3], np.eye(3))


def test_jacobian_matches_finite_differences():
    tgt = cubic_with_infinity()
    rng = np.random.default_rng(0)
    Y = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    F, J = tgt.evaluate(Y)
    h = 1e-6
    for j in range(3):
        d = np.zeros(3)
        d[j] = h
        fd = (tgt.evaluate(Y + d)[0] - tgt.evaluate(Y - d)[0]) / (2 * h)
        assert np.allclose(J[:, :, j], fd, atol=1e-6)


def test_randomized_target_shapes():
    tgt = quadratic_target()
    R = np.array([[1.0, 2.0]])
    sub = ho.HomogeneousTarget(tgt.exps, tgt.coefs, tgt.starts, tgt.degrees, tgt.L, R)
    Y = np.ones((5, 3), dtype=complex)
    F, J = sub.evaluate(Y)
    assert F.shape == (5, 1) and J.shape == (5, 1, 3)
    assert np.allclose(F[:, 0], tgt.evaluate(Y)[0] @ R[0])


def test_start_points_solve_start_system():
    rng = np.random.default_rng(1)
    hom = ho.Homotopy(cubic_with_infinity(), np.exp(0.3j), rng.standard_normal(3) + 0j)
    Y0 = hom.start_points()
    assert Y0.shape == (9, 3)
    H, _, _ = hom.evaluate(Y0, np.zeros(9, dtype=complex))
    assert np.max(np.abs(H)) < 1e-12


def finite_roots(Y, tol=1e-8):
    z = Y[:, 0]
    keep = np.abs(z) > tol * np.abs(Y).max(axis=1)
    return Y[keep, 1:] / z[keep, None]


def test_tracks_all_roots():
    Y, status, winding, steps, _ = ho.solve_homotopy(quadratic_target(), np.random.default_rng(2))
    assert np.all(status == ho.OK)
    roots = finite_roots(Y)
    want = {(sx, sy) for sx in (-1, 1) for sy in (-2, 2)}
    got = {(round(r[0].real), round(r[1].real)) for r in roots}
    assert got == want
    assert np.max(np.abs(roots.imag)) < 1e-10


def test_paths_to_infinity_are_separated():
    Y, status, winding, _, _ = ho.solve_homotopy(cubic_with_infinity(), np.random.default_rng(3))
    assert np.all(status == ho.OK)
    roots = finite_roots(Y, 1e-6)
    # x^3 = 1 and x y^2 = 1: 3 values of x, 2 of y each
    assert len(roots) == 6
    assert np.allclose(roots[:, 0] ** 3, 1, atol=1e-8)
    assert np.allclose(roots[:, 0] * roots[:, 1] ** 2, 1, atol=1e-8)


def test_double_root_endgame():
    """(x - 2z)^2 = 0, y - 3z = 0: one double root, found through the loop endgame."""
    exps = np.array([[0, 2, 0], [1, 1, 0], [2, 0, 0], [0, 0, 1], [1, 0, 0]])
    coefs = np.array([1, -4, 4, 1, -3], dtype=complex)
    tgt = ho.HomogeneousTarget(exps, coefs, [0, 3], [2, 1], np.eye(3))
    Y, status, winding, _, _ = ho.solve_homotopy(tgt, np.random.default_rng(4))
    roots = finite_roots(Y)
    assert len(roots) == 2
    assert np.allclose(roots, [[2, 3], [2, 3]], atol=1e-9)
    assert set(winding.tolist()) == {2}


@pytest.mark.parametrize("workers", [1, 2])
def test_chunking_does_not_change_results(workers):
    opts = ho.TrackerOptions(chunk_size=2)
    ref = ho.solve_homotopy(cubic_with_infinity(), np.random.default_rng(5), opts)[0]
    got = ho.solve_homotopy(cubic_with_infinity(), np.random.default_rng(5), opts, workers=workers)[0]
    assert np.array_equal(ref, got)


def test_total_degree():
    assert ho.total_degree([4] * 5) == 1024
