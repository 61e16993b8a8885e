import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from realroots.errors import Failure, NotUnitary
from realroots.subspace import dim_search, dominant_eigenspace, rayleigh_reduce

from conftest import multiset_distance


def unitary(n, rng):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def gap_matrix(n, k, rng, tail=1e-8):
    Q = unitary(n, rng)
    d = np.concatenate([np.ones(k), tail * rng.standard_normal(n - k)])
    return Q @ np.diag(d) @ Q.conj().T


def check_basis(res, M, eps):
    U = res.U
    assert np.abs(U.conj().T @ U - np.eye(U.shape[1])).max() <= 1e-10
    nm = np.linalg.norm(M, 2)
    measured = np.linalg.norm(M - U @ U.conj().T @ M, 2) / nm
    assert measured <= eps
    assert abs(measured - res.residual) <= 1e-12


class TestDominant:
    def test_diag(self):
        M = np.diag([10.0, 0.1])
        res = dominant_eigenspace(M, 2, 1, 2, eps=0.02)
        # the sketch range tilts away from e1 by O(0.1/10) only
        assert abs(res.U[0, 0]) >= 1 - 1e-3
        assert 0.01 <= res.residual <= 0.02
        assert res.residual == pytest.approx(0.01, rel=1e-2)

    def test_identity(self):
        res = dominant_eigenspace(np.eye(5), 5, 5, 5)
        assert np.allclose(res.U.conj().T @ res.U, np.eye(5))
        assert res.residual <= 1e-15

    def test_constructed_gap(self, rng):
        M = gap_matrix(12, 3, rng)
        res = dominant_eigenspace(M, 12, 3, 5, eps=1e-6)
        assert res.r == 3 and res.residual <= 1e-6
        check_basis(res, M, 1e-6)

    def test_callback(self, rng):
        M = gap_matrix(10, 2, rng)
        res = dominant_eigenspace(lambda X: M @ X, 10, 2, eps=1e-6)
        check_basis(res, M, 1e-6)

    def test_failure_on_wrong_rank(self, rng):
        M = gap_matrix(10, 4, rng, tail=0.0)
        with pytest.raises(Failure):
            dominant_eigenspace(M, 10, 2, 6, K=3)

    def test_bad_dimensions(self):
        with pytest.raises(ValueError):
            dominant_eigenspace(np.eye(3), 3, 4, 4)

    def test_deterministic(self, rng):
        M = gap_matrix(16, 4, rng)
        a = dominant_eigenspace(M, 16, 4, seed=7)
        b = dominant_eigenspace(M, 16, 4, seed=7)
        assert np.array_equal(a.U, b.U)

    def test_invariance_MU_UL(self, rng):
        M = gap_matrix(14, 3, rng)
        res = dominant_eigenspace(M, 14, 3)
        L = rayleigh_reduce(M, res.U)
        assert np.linalg.norm(M @ res.U - res.U @ L, 2) <= 1e-6 * np.linalg.norm(M, 2)


class TestDimSearch:
    def test_examples(self):
        n = 8
        r, res = dim_search(np.diag([5, 4] + [1e-9] * (n - 2)), n)
        assert r == 2 and res.U.shape[1] == 2
        r, res = dim_search(np.zeros((n, n)), n)
        assert r == 0 and res.U.shape == (n, 0)
        r, _ = dim_search(np.diag([2, 1.999] + [1e-12] * (n - 2)), n)
        assert r == 2

    def test_random(self, rng):
        M = gap_matrix(40, 7, rng)
        r, res = dim_search(M, 40, seed=3)
        assert r == 7 and res.residual <= 1e-6


class TestRayleigh:
    def test_examples(self):
        M = np.diag([3.0, 1.0, 2.0])
        U = np.eye(3)[:, [0, 2]]
        assert np.allclose(rayleigh_reduce(M, U), np.diag([3, 2]))
        assert np.allclose(rayleigh_reduce(M, np.eye(3)[:, [1]]), [[1]])

    def test_invariant_subspace(self, rng):
        n, k = 12, 3
        S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        A = np.zeros((n, n), dtype=complex)
        A[:k, :k] = rng.standard_normal((k, k))
        A[k:, k:] = rng.standard_normal((n - k, n - k))
        A[:k, k:] = rng.standard_normal((k, n - k))
        M = S @ A @ np.linalg.inv(S)
        U = np.linalg.qr(S[:, :k])[0]
        lam = np.linalg.eigvals(rayleigh_reduce(M, U))
        all_lam = np.linalg.eigvals(M)
        scale = np.linalg.norm(M, 2)
        assert all(np.abs(all_lam - x).min() <= 1e-8 * scale for x in lam)

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            rayleigh_reduce(np.eye(3), np.ones((3, 1)))


@settings(max_examples=25, deadline=None)
@given(st.integers(6, 20), st.data())
def test_certificate_property(n, data):
    k = data.draw(st.integers(1, n - 2))
    seed = data.draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    M = gap_matrix(n, k, rng)
    res = dominant_eigenspace(M, n, k, seed=seed)
    check_basis(res, M, 1e-6)
    lam = np.linalg.eigvals(rayleigh_reduce(M, res.U))
    assert multiset_distance(lam, np.ones(k)) <= 1e-6
