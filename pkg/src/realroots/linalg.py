"""Dense matrix kernels: QR with positive diagonal, pivoted-QR numerical rank,
guarded LU inversion, eigenvalues and cheap norm/condition estimates."""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .errors import IllConditioned, NoConvergence, RankDeficient, SingularMatrix

EPS = np.finfo(float).eps
ILL_COND = 1.0 / (50.0 * EPS)


def _check_finite(M):
    M = np.asarray(M)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def qr_positive(M):
    """Thin Householder QR with diag(R) real and positive.

    The factorization is unique for full column rank, so repeated calls on the
    same input agree bitwise.
    """
    M = _check_finite(M)
    m, n = M.shape
    if m < n:
        raise ValueError("qr_positive needs rows >= cols")
    Q, R = np.linalg.qr(M, mode="reduced")
    d = np.diag(R)
    scale = np.linalg.norm(M)
    if n and np.min(np.abs(d)) < 1e-13 * scale:
        raise RankDeficient("Householder pivot below 1e-13 * ||M||")
    phase = d / np.abs(d)
    Q = Q * phase
    R = np.conj(phase)[:, None] * R
    if np.isrealobj(M):
        Q, R = Q.real, R.real
    return Q, R


def pivoted_qr_diagonal(M) -> np.ndarray:
    """|diag(R)| of a column-pivoted QR, in pivot order (nonincreasing)."""
    M = _check_finite(M)
    if M.size == 0:
        return np.zeros(0)
    R = sla.qr(M, mode="r", pivoting=True)[0]
    return np.abs(np.diag(R))


def rank_profile(M) -> np.ndarray:
    """Singular values of M, nonincreasing, via the triangular factor of a column-pivoted QR.

    The pivoted diagonal alone can understate a singular-value gap by a
    factor growing with n; the triangular factor has exactly the singular
    values of M at O(n^3) extra cost on an already reduced matrix.
    """
    M = _check_finite(M)
    if M.size == 0:
        return np.zeros(0)
    R = sla.qr(M, mode="r", pivoting=True)[0]
    return sla.svdvals(R, check_finite=False)


def numerical_rank(M, eps_rel: float = 1e-6, gap: float | None = None) -> int:
    """Numerical rank from the singular values of a column-pivoted QR factor.

    Default rule: count of singular values >= eps_rel * largest.  With
    ``gap`` set, the rank is instead placed at the largest drop
    d[i]/d[i+1] >= gap whose lower side is already below eps_rel; when no such
    cliff exists the matrix is reported as having full numerical rank.
    """
    if not 0 < eps_rel < 1:
        raise ValueError("eps_rel must lie in (0, 1)")
    d = rank_profile(M)
    if d.size == 0 or d[0] == 0:
        return 0
    d = d / d[0]
    if gap is None:
        return int(np.count_nonzero(d >= eps_rel))
    n = d.size
    if d[-1] >= eps_rel:
        return n
    ratios = d[:-1] / np.maximum(d[1:], np.finfo(float).tiny)
    ratios[d[1:] > eps_rel] = 0.0
    i = int(np.argmax(ratios))
    return i + 1 if ratios[i] >= gap else n


def _lapack_prefix(A):
    return "z" if np.iscomplexobj(A) else "d"


def lu_condition(M):
    """LU-factor M and return (lu, piv, cond1) with cond1 the LAPACK 1-norm estimate."""
    M = _check_finite(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    A = M.astype(np.complex128 if np.iscomplexobj(M) else np.float64)
    anorm = np.abs(A).sum(axis=0).max() if A.size else 0.0
    with warnings.catch_warnings():
        # exact singularity is reported below through SingularMatrix
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=False)
    u = np.abs(np.diag(lu))
    if anorm == 0 or np.min(u) < 1e-14 * anorm:
        raise SingularMatrix("LU pivot below 1e-14 * ||M||")
    gecon = getattr(lapack, _lapack_prefix(A) + "gecon")
    rcond, info = gecon(lu, anorm, norm="1")
    cond = np.inf if rcond == 0 else 1.0 / rcond
    return lu, piv, cond


def invert(M, return_cond: bool = False, cond_cap: float | None = None):
    """Inverse by LU with partial pivoting, refusing near-singular input.

    ``cond_cap`` overrides the default refusal threshold 1/(50 eps).
    """
    lu, piv, cond = lu_condition(M)
    if cond > (ILL_COND if cond_cap is None else cond_cap):
        raise IllConditioned(f"condition estimate {cond:.3e} exceeds 1/(50 eps)", cond=cond)
    inv = sla.lu_solve((lu, piv), np.eye(lu.shape[0], dtype=lu.dtype), check_finite=False)
    return (inv, cond) if return_cond else inv


def eigenvalues(M, method: str = "lapack") -> np.ndarray:
    """All eigenvalues of a square matrix.

    ``method="lapack"`` defers to the balanced LAPACK driver; ``method="qr"``
    runs the package's own Hessenberg plus shifted-QR iteration.
    """
    M = _check_finite(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if M.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    if method == "lapack":
        return sla.eigvals(M, check_finite=False)
    if method == "qr":
        return hessenberg_qr_eigenvalues(M)
    raise ValueError(f"unknown method {method!r}")


def _givens(a, b):
    r = np.hypot(abs(a), abs(b))
    if r == 0:
        return 1.0, 0.0
    return a / r, b / r


def hessenberg_qr_eigenvalues(M, max_sweeps: int | None = None) -> np.ndarray:
    """Complex single-shift QR with Wilkinson shifts and deflation."""
    H = sla.hessenberg(np.asarray(M, dtype=complex))
    n = H.shape[0]
    max_sweeps = 40 * n if max_sweeps is None else max_sweeps
    eigs = np.zeros(n, dtype=complex)
    hi = n - 1
    sweeps = 0
    since_deflation = 0
    while hi >= 0:
        if hi == 0:
            eigs[0] = H[0, 0]
            break
        # look for a negligible subdiagonal entry
        lo = hi
        while lo > 0:
            s = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if s == 0:
                s = np.abs(H[: hi + 1, : hi + 1]).sum()
            if abs(H[lo, lo - 1]) <= EPS * s:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = H[hi, hi]
            hi -= 1
            since_deflation = 0
            continue
        sweeps += 1
        since_deflation += 1
        if sweeps > max_sweeps:
            raise NoConvergence(f"QR iteration did not converge in {max_sweeps} sweeps")
        a, b, c, d = H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi]
        tr, det = a + d, a * d - b * c
        disc = np.sqrt(tr * tr / 4 - det)
        mu1, mu2 = tr / 2 + disc, tr / 2 - disc
        mu = mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2
        if since_deflation % 11 == 10:
            # exceptional shift to break cycles
            mu = d + abs(H[hi, hi - 1]) * (0.75 + 0.5j)
        # explicit shifted QR step on the active block via Givens rotations
        blk = slice(lo, hi + 1)
        A = H[blk, blk]
        m = A.shape[0]
        A -= mu * np.eye(m)
        rots = []
        for k in range(m - 1):
            cs, sn = _givens(A[k, k], A[k + 1, k])
            G = np.array([[np.conj(cs), np.conj(sn)], [-sn, cs]])
            A[k : k + 2, k:] = G @ A[k : k + 2, k:]
            rots.append(G)
        for k, G in enumerate(rots):
            A[: k + 2, k : k + 2] = A[: k + 2, k : k + 2] @ G.conj().T
        A += mu * np.eye(m)
        H[blk, blk] = A
    return eigs


def norm2_est(M, iters: int = 30) -> float:
    """Spectral norm by power iteration on M^H M from a fixed start vector."""
    M = _check_finite(M)
    n = M.shape[1]
    if n == 0 or not np.any(M):
        return 0.0
    v = np.ones(n) + 0.1 * np.cos(np.arange(n))
    v = v / np.linalg.norm(v)
    est = 0.0
    for _ in range(iters):
        w = M.conj().T @ (M @ v)
        nw = np.linalg.norm(w)
        if nw == 0:
            break
        est = np.sqrt(nw)
        v = w / nw
    return float(est)


def cond_est(M) -> float:
    """norm2_est(M) * norm2_est(M^{-1}); propagates SingularMatrix."""
    lu, piv, _ = lu_condition(M)
    inv = sla.lu_solve((lu, piv), np.eye(lu.shape[0], dtype=lu.dtype), check_finite=False)
    return norm2_est(M) * norm2_est(inv)
