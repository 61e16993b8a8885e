"""Randomized approximation of a dominant eigenspace and Rayleigh reduction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import Failure, NoStableRank, NotUnitary
from .linalg import numerical_rank


@dataclass(frozen=True)
class SubspaceResult:
    U: np.ndarray
    r: int
    residual: float
    attempts: int


def gaussian_sketch(n: int, k: int, seed: int, attempt: int = 0) -> np.ndarray:
    """Standard real Gaussian n-by-k block from a Philox stream keyed by (seed, attempt)."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, int(attempt)])
    return np.random.Generator(np.random.Philox(ss)).standard_normal((n, k))


def _as_matrix(apply_M, n: int) -> np.ndarray:
    if callable(apply_M):
        return np.asarray(apply_M(np.eye(n)))
    M = np.asarray(apply_M)
    if M.shape != (n, n):
        raise ValueError(f"matrix has shape {M.shape}, expected {(n, n)}")
    return M


def projection_residual(M: np.ndarray, U: np.ndarray) -> float:
    """||M - U U^H M|| / ||M|| in the spectral norm."""
    nm = np.linalg.norm(M, 2)
    if nm == 0:
        return 0.0
    R = M - U @ (U.conj().T @ M)
    return float(np.linalg.norm(R, 2) / nm)


def dominant_eigenspace(
    apply_M,
    n: int,
    r: int,
    r_plus: int | None = None,
    K: int = 4,
    eps: float = 1e-6,
    seed: int = 0,
    gap: float | None = None,
    cert_tol: float | None = -1.0,
    keep: int | None = None,
) -> SubspaceResult:
    """Orthonormal basis for the r-dimensional dominant eigenspace of M.

    Each attempt sketches H = M G with a Gaussian n-by-r_plus block, accepts
    when the numerical rank of H is r, orthonormalizes H by column-pivoted QR
    and rotates that basis by the left singular vectors of Q^H M, so the
    leading r columns span the best rank-r approximation inside range(H).  The projection residual is then measured and,
    unless ``cert_tol`` is None, must not exceed ``cert_tol`` (default: eps).
    ``keep`` > r returns that many leading columns (an oversampled basis);
    the residual always refers to the first r.
    """
    r_plus = min(n, r + 4) if r_plus is None else r_plus
    if not 0 < r <= r_plus <= n:
        raise ValueError("need 0 < r <= r_plus <= n")
    if cert_tol is not None and cert_tol < 0:
        cert_tol = eps
    M = _as_matrix(apply_M, n)
    for attempt in range(K):
        G = gaussian_sketch(n, r_plus, seed, attempt)
        H = M @ G
        if numerical_rank(H, eps, gap) != r:
            continue
        Q = sla.qr(H, mode="economic", pivoting=True)[0]
        # rotate inside range(H) so the leading r columns are the best rank-r basis there
        W = np.linalg.svd(Q.conj().T @ M)[0]
        Q = Q @ W
        res = projection_residual(M, Q[:, :r])
        if cert_tol is None or res <= cert_tol:
            U = Q[:, : max(r, min(keep or r, Q.shape[1]))]
            return SubspaceResult(U, r, res, attempt + 1)
    raise Failure(f"no rank-{r} sketch found in {K} attempts")


def dim_search(apply_M, n: int, r_plus_max: int | None = None, eps: float = 1e-6, seed: int = 0, gap=None):
    """Find the dominant dimension by doubling the sketch size until the rank settles.

    Returns (r, SubspaceResult); r = 0 (with an empty basis) for M = 0.
    """
    M = _as_matrix(apply_M, n)
    r_plus_max = n if r_plus_max is None else min(r_plus_max, n)
    if not np.any(M):
        return 0, SubspaceResult(np.zeros((n, 0), dtype=M.dtype), 0, 0.0, 0)
    prev = None
    s = 1
    attempt = 0
    while True:
        size = min(s, r_plus_max)
        G = gaussian_sketch(n, size, seed, attempt)
        attempt += 1
        rank = numerical_rank(M @ G, eps, gap)
        # the sketch has room to spare and agrees with the previous one
        if rank < size and rank == prev:
            break
        if rank < size and size == r_plus_max:
            break
        if size == r_plus_max:
            if rank == n:
                break
            raise NoStableRank(f"rank estimates did not settle up to r_plus={r_plus_max}")
        prev = rank
        s *= 2
    if rank == 0:
        return 0, SubspaceResult(np.zeros((n, 0), dtype=M.dtype), 0, 0.0, attempt)
    res = dominant_eigenspace(M, n, rank, min(n, rank + 4), eps=eps, seed=seed, gap=gap, cert_tol=None)
    return rank, res


def rayleigh_reduce(M, U) -> np.ndarray:
    """L = U^H M U for U with orthonormal columns."""
    U = np.asarray(U)
    r = U.shape[1]
    if np.linalg.norm(U.conj().T @ U - np.eye(r)) > 1e-8:
        raise NotUnitary("columns of U are not orthonormal")
    return U.conj().T @ np.asarray(M) @ U
