import math

import numpy as np
import pytest

from conftest import k2, log_uniform, random_graph
from graphheat import (WeightedGraph, compose, dense_oracle, evolve,
                       evolve_many, generate, heat_kernel, jump_matrix)


def test_jump_matrix_k2():
    P = jump_matrix(k2())
    assert P[0, 1] == 1.0 and P[0, 0] == 0.0


def test_jump_matrix_triangle():
    P = jump_matrix(generate("complete", n=3))
    off = P[~np.eye(3, dtype=bool)]
    assert np.all(off == 0.5)


def test_jump_matrix_star():
    g = generate("star", n=4)  # center v0 with 3 leaves
    P = jump_matrix(g)
    assert np.all(P[0, 1:] == pytest.approx(1 / 3))
    assert np.all(P[1:, 0] == 1.0)


def test_jump_matrix_rows_stochastic():
    rng = np.random.default_rng(0)
    g = random_graph(rng)
    P = jump_matrix(g)
    sums = P.sum(axis=1)
    for i in range(g.n):
        expected = 1.0 if g.degrees[i] > 0 else 0.0
        assert sums[i] == pytest.approx(expected, abs=1e-14)


def test_kernel_at_time_zero():
    g = k2(mu=(2.0, 0.5))
    K = heat_kernel(g, 0.0)
    np.testing.assert_allclose(K.matrix, np.diag(1.0 / g.mu), atol=0)


def test_kernel_k2_closed_form():
    K = heat_kernel(k2(), 1.0, tol=1e-13)
    assert K.value("a", "b") == pytest.approx((1 - math.exp(-2)) / 2, abs=1e-11)


def test_kernel_k3_diagonal_and_limit():
    g = generate("complete", n=3, measure_mode="degree")
    for t in (0.5, 2.0):
        K = heat_kernel(g, t, tol=1e-13)
        assert K.value("v0", "v0") == pytest.approx(
            1 / 6 + (1 / 3) * math.exp(-1.5 * t), abs=1e-11)
    K = heat_kernel(g, 60.0, tol=1e-13)
    assert K.value("v0", "v0") == pytest.approx(1 / g.total_volume, abs=1e-11)


def test_kernel_rejects_bad_tol_and_time():
    with pytest.raises(ValueError):
        heat_kernel(k2(), 1.0, tol=0.0)
    with pytest.raises(ValueError):
        heat_kernel(k2(), -1.0)


def test_kernel_edgeless_graph():
    g = WeightedGraph(["a", "b"], [], mu={"a": 2.0, "b": 4.0})
    K = heat_kernel(g, 3.0)
    np.testing.assert_allclose(K.matrix, np.diag([0.5, 0.25]), atol=0)


def test_series_matches_dense_oracle():
    rng = np.random.default_rng(1)
    for _ in range(15):
        g = random_graph(rng)
        for t in (0.1, 1.0, 10.0):
            a = heat_kernel(g, t, tol=1e-12).matrix
            b = dense_oracle(g, t).matrix
            assert np.abs(a - b).max() <= 1e-8


def test_kernel_invariants_mass_symmetry_positivity():
    rng = np.random.default_rng(2)
    for _ in range(10):
        g = random_graph(rng)
        K = heat_kernel(g, 1.0, tol=1e-12)
        np.testing.assert_allclose(K.mass(), 1.0, atol=1e-9)
        assert np.all(K.matrix >= 0.0)
        # symmetry under symmetric weights
        np.testing.assert_allclose(K.matrix, K.matrix.T, atol=1e-10)
        # positivity exactly on connected components
        D = g.distance_matrix()
        assert np.all((K.matrix > 0) == np.isfinite(D))


def test_semigroup_composition():
    rng = np.random.default_rng(3)
    for _ in range(5):
        g = random_graph(rng, n_max=20)
        ks = heat_kernel(g, 0.4, tol=1e-12)
        kt = heat_kernel(g, 0.6, tol=1e-12)
        kst = heat_kernel(g, 1.0, tol=1e-12)
        assert np.abs(compose(ks, kt) - kst.matrix).max() <= 1e-8


def test_diagonal_lower_bound_mu_deg():
    rng = np.random.default_rng(4)
    for _ in range(5):
        g = random_graph(rng, measure_mode="degree", p=0.5, connected=True)
        for t in (0.1, 1.0, 5.0, 20.0):
            K = heat_kernel(g, t, tol=1e-12)
            diag = np.diag(K.matrix)
            bound = math.exp(-t) / g.degrees
            assert np.all(diag - bound >= -1e-12)


def test_evolve_constant_stationary():
    g = k2(mu=(2.0, 1.0))
    for t in (0.0, 0.5, 5.0):
        np.testing.assert_allclose(evolve(g, [3.0, 3.0], t), 3.0, atol=1e-10)


def test_evolve_k2_closed_form():
    g = k2()
    for t in (0.3, 1.0, 2.5):
        u = evolve(g, [4.0, 1.0], t, tol=1e-13)
        assert u[0] == pytest.approx(2.5 + 1.5 * math.exp(-2 * t), abs=1e-11)
        assert u[1] == pytest.approx(2.5 - 1.5 * math.exp(-2 * t), abs=1e-11)


def test_evolve_mass_conservation_and_positivity():
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = random_graph(rng)
        u0 = log_uniform(rng, g.n)
        ut = evolve(g, u0, 2.0, tol=1e-12)
        assert np.all(ut > 0)
        assert float(np.sum(g.mu * ut)) == pytest.approx(
            float(np.sum(g.mu * u0)), rel=1e-9)


def test_evolve_many_matches_evolve():
    rng = np.random.default_rng(6)
    g = random_graph(rng)
    U0 = log_uniform(rng, g.n * 3).reshape(g.n, 3)
    U = evolve_many(g, U0, 1.5)
    for j in range(3):
        np.testing.assert_allclose(U[:, j], evolve(g, U0[:, j], 1.5),
                                   rtol=0, atol=1e-12 * U0.max())


def test_asymmetric_generator_kernel():
    g = WeightedGraph(["a", "b"], [("a", "b", 1.0), ("b", "a", 2.0)],
                      weights_symmetric=False, measure_mode="unit")
    K = heat_kernel(g, 1.0, tol=1e-12)
    O = dense_oracle(g, 1.0)
    assert np.abs(K.matrix - O.matrix).max() <= 1e-8
    np.testing.assert_allclose(K.mass(), 1.0, atol=1e-9)


def test_dense_oracle_cap():
    g = generate("path", n=10)
    with pytest.raises(ValueError):
        dense_oracle(g, 1.0, cap=5)
