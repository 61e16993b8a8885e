import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from realroots.errors import IllConditioned, RankDeficient, SingularMatrix
from realroots.frobenius import companion
from realroots.linalg import (
    cond_est,
    eigenvalues,
    hessenberg_qr_eigenvalues,
    invert,
    norm2_est,
    numerical_rank,
    qr_positive,
)
from realroots.poly import Polynomial

from conftest import multiset_distance


# pivots 1 and 3e-14: above the singularity floor, condition ~1.3e14
NEAR_SINGULAR = np.array([[1.0, 1.0], [1.0, 1.0 + 3e-14]])


def haar(n, rng, complex_=True):
    G = rng.standard_normal((n, n)) + (1j * rng.standard_normal((n, n)) if complex_ else 0)
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


class TestQR:
    def test_identity(self):
        Q, R = qr_positive(np.eye(3))
        assert np.allclose(Q, np.eye(3)) and np.allclose(R, np.eye(3))

    def test_column(self):
        Q, R = qr_positive(np.array([[0.0], [2.0]]))
        assert np.allclose(Q, [[0], [1]]) and np.allclose(R, [[2]])

    def test_random(self, rng):
        M = rng.standard_normal((8, 3))
        Q, R = qr_positive(M)
        assert np.abs(M - Q @ R).max() <= 1e-12 * np.linalg.norm(M)
        assert np.abs(Q.T @ Q - np.eye(3)).max() <= 1e-12
        assert np.all(np.diag(R) > 0)

    def test_complex_and_deterministic(self, rng):
        M = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
        Q1, R1 = qr_positive(M)
        Q2, R2 = qr_positive(M)
        assert np.array_equal(Q1, Q2) and np.array_equal(R1, R2)
        assert np.allclose(np.diag(R1).imag, 0) and np.all(np.diag(R1).real > 0)

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            qr_positive(np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]]))


class TestRank:
    def test_examples(self, rng):
        assert numerical_rank(np.diag([1, 1e-12]), 1e-6) == 1
        assert numerical_rank(np.eye(4), 1.0 - 1e-12) == 4
        U, V = haar(3, rng), haar(3, rng)
        assert numerical_rank(U @ np.diag([1, 0.5, 1e-9]) @ V.conj().T, 1e-6) == 2

    def test_monotone_in_eps(self, rng):
        M = haar(10, rng) @ np.diag(np.logspace(0, -12, 10)) @ haar(10, rng)
        ranks = [numerical_rank(M, e) for e in np.logspace(-11, -1, 11)]
        assert all(a >= b for a, b in zip(ranks, ranks[1:]))

    def test_gap_rule(self, rng):
        U = haar(8, rng)
        d = np.array([1, 0.9, 0.8, 1e-7, 1e-7, 1e-8, 1e-9, 1e-9])
        assert numerical_rank(U @ np.diag(d) @ U.conj().T, 1e-6, gap=1e3) == 3

    def test_zero(self):
        assert numerical_rank(np.zeros((3, 3))) == 0


class TestInvert:
    def test_examples(self):
        R = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert np.allclose(invert(R), [[0, 1], [-1, 0]])
        assert np.allclose(invert(np.eye(5)), np.eye(5))

    def test_random(self, rng):
        M = rng.standard_normal((16, 16)) + 4 * np.eye(16)
        assert np.abs(M @ invert(M) - np.eye(16)).max() <= 1e-10

    def test_cond_1e6(self, rng):
        M = haar(12, rng) @ np.diag(np.logspace(0, -6, 12)) @ haar(12, rng)
        assert np.abs(M @ invert(M) - np.eye(12)).max() <= 1e-8

    def test_involution(self, rng):
        M = haar(10, rng) @ np.diag(np.logspace(0, -4, 10)) @ haar(10, rng)
        assert np.abs(invert(invert(M)) - M).max() <= 1e-8 * np.abs(M).max()

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            invert(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_ill_conditioned(self):
        with pytest.raises(IllConditioned) as info:
            invert(NEAR_SINGULAR)
        assert info.value.cond > 1e14

    def test_cond_cap(self):
        inv = invert(NEAR_SINGULAR, cond_cap=1e16)
        assert np.abs(NEAR_SINGULAR @ inv - np.eye(2)).max() <= 1e-1


class TestEigenvalues:
    @pytest.mark.parametrize("method", ["lapack", "qr"])
    def test_examples(self, method):
        assert multiset_distance(eigenvalues(np.diag([3.0, 1.0, 2.0]), method), [3, 1, 2]) < 1e-12
        assert multiset_distance(eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]]), method), [1j, -1j]) < 1e-12
        C = companion(Polynomial.from_roots([1.0, 2.0, 3.0]))
        assert multiset_distance(eigenvalues(C, method), [1, 2, 3]) <= 1e-10

    def test_own_qr_matches_lapack(self, rng):
        for n in (5, 20, 40):
            M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            ours = hessenberg_qr_eigenvalues(M)
            assert multiset_distance(ours, np.linalg.eigvals(M)) <= 1e-10 * np.linalg.norm(M, 2)

    def test_unitary_similarity(self, rng):
        M = rng.standard_normal((12, 12))
        P = haar(12, rng)
        a = eigenvalues(M, "qr")
        b = eigenvalues(P.conj().T @ M @ P, "qr")
        assert multiset_distance(a, b) <= 1e-8 * np.linalg.norm(M, 2)


class TestEstimates:
    def test_examples(self):
        assert abs(norm2_est(np.diag([2.0, 1.0])) - 2) <= 1e-3
        assert abs(cond_est(np.eye(7)) - 1) <= 1e-2
        assert abs(cond_est(np.diag([1e5, 1.0])) / 1e5 - 1) <= 1e-2

    def test_random_norm(self, rng):
        M = rng.standard_normal((20, 20))
        assert abs(norm2_est(M) / np.linalg.norm(M, 2) - 1) <= 2e-2


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**31 - 1))
def test_rank_of_constructed_spectrum(k, seed):
    rng = np.random.default_rng(seed)
    n = 10
    d = np.concatenate([rng.uniform(0.5, 1.0, k), rng.uniform(0, 1e-10, n - k)])
    M = haar(n, rng) @ np.diag(d) @ haar(n, rng)
    assert numerical_rank(M, 1e-6) == k
    assert numerical_rank(M, 1e-6, gap=1e3) == k
