import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import linprog

from vclab import graphs as gr
from vclab import linalg as la
from vclab.linalg import kernels


def sym_matrices(max_n=60):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
    ).map(lambda A: 0.5 * (A + A.T))


# ---- eigen-decomposition -------------------------------------------------


def test_eig_sym_two_by_two():
    sd = la.eig_sym([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(sd.eigenvalues, [1.0, -1.0], atol=1e-14)


def test_eig_sym_all_ones():
    sd = la.eig_sym(np.ones((3, 3)))
    np.testing.assert_allclose(sd.eigenvalues, [3.0, 0.0, 0.0], atol=1e-13)


def test_cycle5_extreme_eigenvalues():
    A = gr.cycle(5).adjacency
    assert la.lambda_max(A) == pytest.approx(2.0, abs=1e-12)
    assert la.lambda_min(A) == pytest.approx(2 * math.cos(4 * math.pi / 5), abs=1e-12)
    assert la.lambda_min(A) == pytest.approx(-1.6180339887, abs=1e-10)


def test_eig_sym_rejects_asymmetric():
    with pytest.raises(ValueError):
        la.eig_sym([[0.0, 1.0], [2.0, 0.0]])


def test_eig_sym_empty():
    sd = la.eig_sym(np.zeros((0, 0)))
    assert sd.eigenvalues.size == 0


@given(sym_matrices())
def test_eig_sym_reconstruction_and_orthonormality(A):
    sd = la.eig_sym(A)
    n = A.shape[0]
    scale = 1.0 + np.linalg.norm(A)
    assert np.linalg.norm(sd.reconstruct() - A) <= 1e-10 * scale
    Q = sd.eigenvectors
    assert np.abs(Q.T @ Q - np.eye(n)).max() <= 1e-10
    assert np.all(np.diff(sd.eigenvalues) <= 1e-12)


@given(sym_matrices(40))
def test_eigenvalues_match_lapack(A):
    np.testing.assert_allclose(la.eigvalsh(A), np.linalg.eigvalsh(A), atol=1e-9 * (1 + np.abs(A).max()))


@pytest.mark.skipif(kernels.compiled_eigh is None, reason="compiled kernel not built")
@given(sym_matrices(30))
def test_backends_agree(A):
    wc, Vc = kernels.compiled_eigh(A, True)
    wp, Vp = kernels.python_eigh(A, True)
    np.testing.assert_allclose(wc, wp, atol=1e-10 * (1 + np.abs(A).max()))
    for V in (Vc, Vp):
        assert np.linalg.norm((V * wc) @ V.T - A) <= 1e-9 * (1 + np.linalg.norm(A))


@pytest.mark.parametrize("impl", ["python", "compiled"])
@pytest.mark.parametrize("n", [10, 56, 58, 67, 100, 130])
def test_highly_degenerate_spectrum(impl, n):
    # the all-ones matrix tridiagonalizes to a matrix with denormal entries
    fn = kernels.python_eigh if impl == "python" else kernels.compiled_eigh
    if fn is None:
        pytest.skip("compiled kernel not built")
    A = np.ones((n, n))
    w, V = fn(A, True)
    assert np.abs(V.T @ V - np.eye(n)).max() <= 1e-12
    assert np.abs((V * w) @ V.T - A).max() <= 1e-12 * n
    np.testing.assert_allclose(w[-1], n, rtol=1e-14)


def test_backend_is_reported():
    assert la.BACKEND in ("compiled", "python")


# ---- products ---------------------------------------------------------------


def test_kron_identities():
    np.testing.assert_array_equal(la.kron(np.eye(2), np.eye(3)), np.eye(6))


def test_kron_k2_spectrum():
    A = gr.complete(2).adjacency
    w = np.sort(la.eigvalsh(la.kron(A, A)))
    np.testing.assert_allclose(w, [-1, -1, 1, 1], atol=1e-13)


@given(sym_matrices(6), sym_matrices(6))
def test_kron_spectrum_is_pairwise_products(X, Y):
    w = np.sort(la.eigvalsh(la.kron(X, Y)))
    prods = np.sort(np.outer(la.eigvalsh(X), la.eigvalsh(Y)).ravel())
    np.testing.assert_allclose(w, prods, atol=1e-9 * (1 + np.abs(X).max() * np.abs(Y).max()))


def test_kron_row_major_indexing():
    X = np.arange(4.0).reshape(2, 2)
    Y = np.arange(9.0).reshape(3, 3)
    K = la.kron(X, Y)
    for i, l, j, k in itertools.product(range(2), range(3), range(2), range(3)):
        assert K[i * 3 + l, j * 3 + k] == X[i, j] * Y[l, k]


@given(sym_matrices(8))
def test_schur_with_all_ones(X):
    np.testing.assert_array_equal(la.schur(np.ones_like(X), X), X)


def test_schur_size_mismatch():
    with pytest.raises(ValueError):
        la.schur(np.eye(2), np.eye(3))


# ---- rank and kernel ------------------------------------------------------


def test_rank_examples():
    J4 = np.ones((4, 4))
    assert la.numeric_rank(J4) == 1
    assert la.numeric_rank(4 * np.eye(4) - J4) == 3


def test_kernel_of_all_ones():
    K = la.kernel_basis(np.ones((3, 3)))
    assert K.shape == (3, 2)
    np.testing.assert_allclose(K.sum(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(K.T @ K, np.eye(2), atol=1e-12)


@given(sym_matrices(20))
def test_rank_plus_nullity(X):
    assert la.numeric_rank(X) + la.kernel_basis(X).shape[1] == X.shape[0]


@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 10**6))
def test_rank_of_low_rank_products(n, r, seed):
    r = min(r, n)
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    F = Q[:, :r] * rng.uniform(1.0, 2.0, size=r)
    assert la.numeric_rank(F @ F.T) == r


# ---- PSD test ----------------------------------------------------------------


def test_cholesky_identity():
    rep = la.cholesky_psd(np.eye(3))
    assert rep.is_psd
    np.testing.assert_allclose(rep.factor, np.eye(3), atol=1e-8)


def test_cholesky_indefinite_witness():
    rep = la.cholesky_psd([[1.0, 2.0], [2.0, 1.0]])
    assert not rep.is_psd
    assert rep.witness_value == pytest.approx(-1.0, abs=1e-12)
    v = rep.witness * np.sign(rep.witness[0])
    np.testing.assert_allclose(v, np.array([1.0, -1.0]) / np.sqrt(2), atol=1e-12)


@pytest.mark.parametrize("m", range(1, 11))
def test_cholesky_complete_graph_gram(m):
    X = m * np.eye(m) - np.ones((m, m))
    rep = la.cholesky_psd(X)
    assert rep.is_psd
    L = rep.factor
    assert np.abs(L @ L.T - X).max() <= 1e-7 * m


# ---- nonnegative least squares -------------------------------------------------


def test_membership_zero_target():
    res = la.nnls_membership([0.0, 0.0], [[1.0, 2.0], [-3.0, 1.0]])
    assert res.feasible
    np.testing.assert_array_equal(res.coefficients, [0.0, 0.0])


def test_membership_unit_vectors():
    res = la.nnls_membership([1.0, 1.0], [[1.0, 0.0], [0.0, 1.0]])
    assert res.feasible
    np.testing.assert_allclose(res.coefficients, [1.0, 1.0], atol=1e-12)


def test_membership_triangle_coloring():
    P = gr_factor(3 * np.eye(3) - np.ones((3, 3)))
    res = la.nnls_membership(-P[0], [P[1], P[2]])
    assert res.feasible
    np.testing.assert_allclose(res.coefficients, [1.0, 1.0], atol=1e-10)


def test_membership_outside_cone():
    res = la.nnls_membership([-1.0, 0.0], [[1.0, 0.0], [0.0, 1.0]])
    assert not res.feasible
    assert res.residual == pytest.approx(1.0)


def gr_factor(M):
    w, V = np.linalg.eigh(M)
    keep = w > 1e-9
    return V[:, keep] * np.sqrt(w[keep])


def _cone_oracle(target, G):
    """Feasibility of ``G a = target, a >= 0`` by HiGHS."""
    k = G.shape[1]
    res = linprog(np.zeros(k), A_eq=G, b_eq=target, bounds=[(0, None)] * k, method="highs")
    return res.status == 0


@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 10**6), st.booleans())
def test_membership_matches_lp_oracle(d, k, seed, inside):
    rng = np.random.default_rng(seed)
    G = rng.integers(-3, 4, size=(d, k)).astype(float)
    if inside:
        target = G @ rng.integers(0, 3, size=k).astype(float)
    else:
        target = rng.integers(-3, 4, size=d).astype(float)
    res = la.nnls_membership(target, list(G.T))
    assert res.feasible == _cone_oracle(target, G)
    if res.feasible:
        assert np.all(res.coefficients >= 0)
        assert np.linalg.norm(G @ res.coefficients - target) <= 1e-8 * (1 + np.linalg.norm(target))


# ---- linear programming -----------------------------------------------------------


def test_lp_feasible_point():
    x = la.lp_feasible(A_eq=[[1.0]], b_eq=[0.5], bounds=[(0.0, 1.0)])
    assert x == pytest.approx([0.5])


def test_lp_infeasible():
    x = la.lp_feasible(
        A_ub=[[-1.0, 0.0], [0.0, -1.0]], b_ub=[-2.0, -2.0], A_eq=[[1.0, 1.0]], b_eq=[1.0],
        bounds=[(0.0, 10.0)] * 2,
    )
    assert x is None


@given(st.integers(0, 10**6))
def test_lp_interior_point(seed):
    rng = np.random.default_rng(seed)
    x0 = rng.uniform(-1, 1, size=3)
    A = rng.standard_normal((5, 3))
    b = A @ x0 + rng.uniform(0.1, 1.0, size=5)
    x = la.lp_feasible(A_ub=A, b_ub=b, bounds=[(-5.0, 5.0)] * 3, interior=True)
    assert x is not None
    assert np.all(A @ x < b)


@given(st.integers(0, 10**6))
def test_lp_solve_matches_highs(seed):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(4)
    A = rng.standard_normal((3, 4))
    b = rng.uniform(0.0, 2.0, size=3)
    bounds = [(-1.0, 2.0)] * 4
    ours = la.lp_solve(c, A, b, None, None, bounds)
    ref = linprog(c, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    assert ours.success == (ref.status == 0)
    if ours.success:
        assert ours.fun == pytest.approx(ref.fun, abs=1e-8)


def test_lp_feasible_requires_bounds():
    with pytest.raises(ValueError):
        la.lp_feasible(A_eq=[[1.0]], b_eq=[1.0])
