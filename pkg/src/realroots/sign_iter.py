"""Modified matrix sign iterations for real eigenvalues and real roots.

The map x -> (x - 1/x)/2 keeps the real line invariant and sends every
nonreal point to sign(Im x) i.  Applied to a companion matrix it drives all
nonreal eigenvalues to +-i while the real ones stay real, so the real
eigenspace can be read off a matrix that annihilates the images of +-i.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import (
    Failure,
    IllConditioned,
    MaxIterExceeded,
    NoConvergence,
    RealInput,
    ScalingFailed,
    SingularMatrix,
    ZeroConstantTerm,
    ZeroInput,
    ZeroOnCircle,
)
from .frobenius import companion
from .geometry import count_eigenvalues_disc
from .linalg import EPS, cond_est, invert, norm2_est, numerical_rank, pivoted_qr_diagonal
from .poly import Polynomial, strip_zero_roots
from .refine import polish_roots, scaled_residuals
from .subspace import dominant_eigenspace, rayleigh_reduce

VARIANTS = ("basic", "stabilized", "hybrid", "cubic", "quintic")


@dataclass
class SignFlowConfig:
    max_iter: int = 60
    check_period: int = 5
    eps_rank: float = 1e-6
    alpha: float = 1e-4
    shift_policy: str = "heuristic_s"
    scale: str = "none"
    variant: str = "basic"
    rank_gap: float = 1e3
    im_tol: float = 1e-4
    real_tol: float = 1e-8
    balance: bool = True
    seed: int = 0
    oversample: int = 4
    cayley_pretransform: bool = False
    cond_cap: float = 1e5
    divergence_cap: float = 1e12
    max_shifts: int = 3
    refine: bool = True

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.check_period < 1:
            raise ValueError("check_period must be at least 1")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.shift_policy not in ("none", "heuristic_s", "randomized_s"):
            raise ValueError(f"unknown shift policy {self.shift_policy!r}")
        if self.scale not in ("none", "determinantal"):
            raise ValueError(f"unknown scaling {self.scale!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


@dataclass
class SignFlowReport:
    roots: np.ndarray
    iterations: int
    rank_history: list = field(default_factory=list)
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    status: str = "ok"
    r_detected: int = 0
    shifts: int = 0
    forced_inversions: int = 0
    switched_at: int | None = None
    variant: str = "basic"


# ------------------------------------------------------------------ scalar model

def mobius_step(x):
    """One step of x -> (x - 1/x)/2."""
    if x == 0:
        raise ZeroInput("the map is undefined at 0")
    return 0.5 * (x - 1.0 / x)


def mobius_bound(x0, h: int) -> float:
    """2 K^(2^h) / (1 - K^(2^h)) with K = |(x0 - s i)/(x0 + s i)|, s = sign(Im x0)."""
    x0 = complex(x0)
    if x0.imag == 0:
        raise RealInput("real starting points never leave the real line")
    s = 1.0 if x0.imag > 0 else -1.0
    K = abs((x0 - s * 1j) / (x0 + s * 1j))
    Kh = K ** (2**h)
    return 2.0 * Kh / (1.0 - Kh)


# ------------------------------------------------------------------ matrix steps

def sign_step(M) -> np.ndarray:
    """M -> (M - M^{-1})/2; raises IllConditioned or SingularMatrix from the inversion."""
    M = np.asarray(M)
    return 0.5 * (M - invert(M))


def determinantal_scale(p: Polynomial, balance: bool = False):
    """nu = |p_n/p_0|^(1/n) and M0 = sign_step(nu C_p)."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.coeffs[0] == 0:
        raise ZeroConstantTerm("p(0) = 0, the companion matrix is singular")
    nu = abs(p.lead / p.coeffs[0]) ** (1.0 / p.degree)
    C = companion(p)
    if balance:
        C = _balance(C)
    return nu, sign_step(nu * C)


def cubic_step(M) -> np.ndarray:
    """M -> (M^3 + 3M)/2, inversion free."""
    M = np.asarray(M)
    M2 = M @ M
    return 0.5 * (M @ M2 + 3.0 * M)


def quintic_step(M) -> np.ndarray:
    """M -> -(3M^5 + 10M^3 + 15M)/8, Horner in M^2."""
    M = np.asarray(M)
    M2 = M @ M
    n = M.shape[0]
    inner = 3.0 * M2 + 10.0 * np.eye(n)
    inner = inner @ M2 + 15.0 * np.eye(n)
    return -0.125 * (M @ inner)


def newton_schultz_sign(M, tol: float = 1e-10, max_iter: int = 100) -> np.ndarray:
    """sign(M) = M (M^2)^{-1/2} via the coupled inversion-free square-root iteration.

    A scaling a = 2^j is chosen so that ||I - (aM)^{-2}|| < 1; the iteration
    then runs on Y_0 = (aM)^{-2}, Z_0 = I and returns aM Y_limit.
    """
    M = np.asarray(M)
    n = M.shape[0]
    I = np.eye(n)
    Minv = invert(M)
    Minv2 = Minv @ Minv
    best = None
    for j in range(-40, 41):
        a = 2.0**j
        A = Minv2 / (a * a)
        d = np.linalg.norm(I - A, 2)
        if d < 1 and (best is None or d < best[0]):
            best = (d, a, A)
    if best is None:
        raise ScalingFailed("no power-of-two scaling brings ||I - (aM)^-2|| below 1")
    _, a, Y = best
    Z = I.astype(Y.dtype)
    for _ in range(max_iter):
        T = 3.0 * I - Z @ Y
        Y, Z = 0.5 * Y @ T, 0.5 * T @ Z
        if np.linalg.norm(I - Z @ Y, 2) <= tol:
            return (a * M) @ Y
    raise NoConvergence(f"Newton-Schultz did not converge in {max_iter} steps")


# ------------------------------------------------------------------ helpers

def _balance(C):
    return np.asarray(sla.matrix_balance(C, permute=False, separate=True)[0])


def annihilator(M) -> np.ndarray | None:
    """I - (M^2 + 2I)^{-1}: real eigenvalues land in [1/2, 1), images of +-i at 0.

    Same eigenvectors as M^2 + I, but bounded, so the numerical rank is not
    swamped by large real images.  Large real images make M^2 + 2I badly
    conditioned without hurting the small part of the inverse that matters,
    so inversion is allowed up to cond 1/eps.  Returns None beyond that.
    """
    n = M.shape[0]
    I = np.eye(n)
    try:
        return I - invert(M @ M + 2.0 * I, cond_cap=1.0 / EPS)
    except (IllConditioned, SingularMatrix):
        return None


def flow_rank(A, cfg: SignFlowConfig) -> int:
    """Gap-rule numerical rank; a matrix that is uniformly tiny has rank 0."""
    d = pivoted_qr_diagonal(A)
    if d.size == 0 or d[0] < cfg.eps_rank:
        return 0
    return numerical_rank(A, cfg.eps_rank, cfg.rank_gap)


class _Stepper:
    """Sign steps with the fallback for ill-conditioned iterates.

    A refused inversion first triggers a small real shift M + sI (at most
    ``max_shifts`` per run).  If the shifted iterate is refused as well, the
    bad conditioning comes from non-normality rather than an eigenvalue near
    0; the step then goes ahead with the plain LU inverse as long as the
    condition estimate stays below 1/eps.
    """

    def __init__(self, cfg: SignFlowConfig):
        self.cfg = cfg
        self.shifts = 0
        self.forced = 0
        self.rng = np.random.default_rng(cfg.seed)

    def __call__(self, M):
        try:
            return sign_step(M)
        except (IllConditioned, SingularMatrix) as exc:
            if self.cfg.shift_policy == "none" or self.shifts >= self.cfg.max_shifts:
                return self._forced(M, exc)
            s = 0.05 * min(1.0, norm2_est(M))
            if self.cfg.shift_policy == "randomized_s" and self.rng.random() < 0.5:
                s = -s
            try:
                out = sign_step(M + s * np.eye(M.shape[0]))
            except (IllConditioned, SingularMatrix):
                return self._forced(M, exc)
            self.shifts += 1
            return out

    def _forced(self, M, exc):
        cond = getattr(exc, "cond", np.inf)
        if cond is None or not cond <= 1.0 / EPS:
            raise IllConditioned(f"iterate is numerically singular: {exc}", cond=cond)
        self.forced += 1
        return 0.5 * (M - invert(M, cond_cap=1.0 / EPS))


@dataclass
class _Prepared:
    q: Polynomial
    zeros: int
    B: np.ndarray


def _prepare(p, cfg: SignFlowConfig) -> _Prepared:
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    q, m = strip_zero_roots(p)
    if q.degree == 0:
        return _Prepared(q, m, np.zeros((0, 0)))
    C = companion(q)
    B = _balance(C) if cfg.balance else C
    return _Prepared(q, m, B)


def _ritz(B, U):
    """Ritz values of B on range(U) and their relative residuals."""
    L = rayleigh_reduce(B, U)
    theta, Y = np.linalg.eig(L)
    V = U @ Y
    R = B @ V - V * theta
    nb = max(np.linalg.norm(B, 2), np.finfo(float).tiny)
    res = np.linalg.norm(R, axis=0) / (nb * np.linalg.norm(V, axis=0))
    return theta, res


def _select(theta, res, k, r_hint, cfg: SignFlowConfig, q: Polynomial | None):
    """Keep the k Ritz values that are both accurate and closest to the real line.

    The score max(residual, |Im|/max(1,|x|)) discards spurious values coming
    from the oversampled directions as well as genuinely nonreal ones.
    Without a hint the survivors must also pass |Im| <= im_tol, and after
    Newton polishing |Im| <= real_tol.
    """
    theta = np.asarray(theta, dtype=complex)
    imrel = np.abs(theta.imag) / np.maximum(1.0, np.abs(theta))
    score = np.maximum(res, imrel)
    order = np.argsort(score, kind="stable")
    cand = theta[order[:k]]
    if r_hint is None:
        cand = cand[np.abs(cand.imag) <= cfg.im_tol * np.maximum(1.0, np.abs(cand))]
    if q is not None and cfg.refine and cand.size:
        cand = polish_roots(q, cand)
        spare = theta[order[k:]][score[order[k:]] <= cfg.im_tol]
        if spare.size:
            cand = _replace_merged(q, cand, spare, cfg.real_tol)
    if r_hint is None and cfg.refine:
        cand = cand[np.abs(cand.imag) <= cfg.real_tol * np.maximum(1.0, np.abs(cand))]
    return np.sort(cand.real)


def _replace_merged(q, cand, spare, tol):
    """Swap candidates that polished onto an already kept root for accurate spare Ritz values.

    A cluster of Ritz values can split around one eigenvalue while a weaker
    direction holds another root; Newton then merges the split pair.
    """
    kept = []
    for x in cand:
        if any(abs(x - y) <= tol * max(1.0, abs(y)) for y in kept):
            continue
        kept.append(x)
    for s in spare:
        if len(kept) == cand.size:
            break
        x = polish_roots(q, np.array([s]))[0]
        if all(abs(x - y) > tol * max(1.0, abs(y)) for y in kept):
            kept.append(x)
    if len(kept) < cand.size:
        return cand  # nothing better available; a genuine multiple root stays doubled
    return np.asarray(kept, dtype=cand.dtype)


def _refine_eigs(A, lam, iters: int = 3):
    """Rayleigh-quotient / inverse-iteration polish of approximate eigenvalues of A."""
    n = A.shape[0]
    out = np.array(lam, dtype=complex)
    I = np.eye(n)
    b = np.cos(np.arange(1, n + 1) * 0.731) + 1.0
    for i, mu in enumerate(out):
        best, best_res = mu, None
        v = b / np.linalg.norm(b)
        for _ in range(iters):
            try:
                with warnings.catch_warnings():
                    # shifted systems are nearly singular by design
                    warnings.simplefilter("ignore", sla.LinAlgWarning)
                    w = sla.solve(A - best * I, v, check_finite=False)
            except (np.linalg.LinAlgError, ValueError):
                break
            nw = np.linalg.norm(w)
            if not np.isfinite(nw) or nw == 0:
                break
            v = w / nw
            Av = A @ v
            rq = np.vdot(v, Av)
            res = np.linalg.norm(Av - rq * v)
            if best_res is None or res < best_res:
                if abs(rq - mu) <= 1e-2 * max(1.0, abs(mu)):
                    best, best_res = rq, res
            else:
                break
        out[i] = best
    return out


def _extract(A, B, r, r_hint, cfg, q):
    """Dominant eigenspace of A, Rayleigh-Ritz on B over an oversampled basis, selection."""
    n = B.shape[0]
    if r == 0:
        return np.zeros(0), "ok"
    r_plus = min(n, r + cfg.oversample)
    try:
        sub = dominant_eigenspace(
            A, n, r, r_plus, eps=cfg.eps_rank, seed=cfg.seed, gap=cfg.rank_gap,
            cert_tol=None, keep=r_plus,
        )
    except Failure:
        return np.zeros(0), "failure"
    theta, res = _ritz(B, sub.U)
    if q is None and cfg.refine:
        theta = _refine_eigs(B, theta)
    k = r if r_hint is None else min(r, r_hint)
    return _select(theta, res, k, r_hint, cfg, q), "ok"


def _finish(prep, roots, status, h, history, cfg, stepper, variant, r, switched=None):
    if prep.zeros:
        roots = np.sort(np.concatenate([roots, np.zeros(prep.zeros)]))
    res = scaled_residuals(prep.q, roots) if roots.size else np.zeros(0)
    if status == "ok" and stepper is not None and stepper.shifts:
        status = "ill_conditioned_shifted"
    return SignFlowReport(
        roots=roots, iterations=h, rank_history=history, residuals=res, status=status,
        r_detected=r + prep.zeros, shifts=stepper.shifts if stepper else 0,
        forced_inversions=stepper.forced if stepper else 0,
        switched_at=switched, variant=variant,
    )


def _fall_back(last, B, r_hint, cfg, q, prep, history, stepper, variant):
    """Extract from the last measured iterate once stepping hits a numerically singular one.

    Real images wander chaotically under the map and one of them can land on
    0; the subspace seen at the previous check is then the best available.
    """
    A, rank, h = last
    history.append((h, "singular_iterate"))
    roots, status = _extract(A, B, rank, r_hint, cfg, q)
    return _finish(prep, roots, status, h, history, cfg, stepper, variant, rank)


def _trivial(prep, cfg, variant):
    return _finish(prep, np.zeros(0), "ok", 0, [], cfg, None, variant, 0)


def _stopped(rank, prev, r_hint, n, allow_stable):
    # a hint bounds the real and nearly real count; clusters may show fewer directions
    if r_hint is not None and (rank == r_hint or 0 < rank < r_hint):
        return True
    if (r_hint is None or allow_stable) and prev is not None and rank == prev and rank < n:
        return True
    return False


# ------------------------------------------------------------------ flows

def real_roots_sign(p, r_hint: int | None = None, cfg: SignFlowConfig | None = None) -> SignFlowReport:
    """Real roots by the modified sign iteration on the companion matrix.

    Every ``check_period`` steps the rank of the annihilator of the iterate is
    measured; the flow stops when it equals ``r_hint`` (the number of real
    roots, when known) or, without a hint, when it repeats at two consecutive
    checks below n.  The real roots are then Ritz values of C_p on the
    dominant eigenspace, polished by Newton's iteration.
    """
    cfg = cfg or SignFlowConfig()
    prep = _prepare(p, cfg)
    n = prep.B.shape[0]
    if n == 0:
        return _trivial(prep, cfg, "basic")
    r_hint = None if r_hint is None else max(0, r_hint - prep.zeros)
    return _run_matrix_flow(prep.B, n, r_hint, cfg, prep, prep.q, "basic", scale_poly=prep.q)


def real_eigs_sign(A, r_hint: int | None = None, cfg: SignFlowConfig | None = None) -> SignFlowReport:
    """Real eigenvalues of a general square matrix by the same flow started at A."""
    cfg = cfg or SignFlowConfig()
    A = np.asarray(A)
    n = A.shape[0]
    B = _balance(A) if cfg.balance else A
    prep = _Prepared(Polynomial([1.0]), 0, B)
    rep = _run_matrix_flow(B, n, r_hint, cfg, prep, None, "basic", scale_poly=None)
    if rep.roots.size:
        rep.residuals = np.array([
            np.linalg.norm(np.linalg.svd(A - x * np.eye(n), compute_uv=False)[-1:]) for x in rep.roots
        ])
    return rep


def _run_matrix_flow(B, n, r_hint, cfg, prep, q, variant, scale_poly=None):
    stepper = _Stepper(cfg)
    h = 0
    if cfg.scale == "determinantal":
        if scale_poly is not None:
            if scale_poly.coeffs[0] == 0:
                raise ZeroConstantTerm("p(0) = 0")
            nu = abs(scale_poly.lead / scale_poly.coeffs[0]) ** (1.0 / n)
        else:
            sign, logdet = np.linalg.slogdet(B)
            if sign == 0:
                raise ZeroConstantTerm("singular input matrix")
            nu = float(np.exp(-logdet / n))
        M = stepper(nu * B)
        h = 1
    else:
        M = B.copy()
    history = []
    prev = None
    last = None
    while h < cfg.max_iter:
        try:
            M = stepper(M)
        except IllConditioned:
            if last is None:
                raise
            return _fall_back(last, B, r_hint, cfg, q, prep, history, stepper, variant)
        h += 1
        if h % cfg.check_period:
            continue
        A = annihilator(M)
        if A is None:
            continue
        rank = flow_rank(A, cfg)
        history.append((h, rank))
        last = (A, rank, h)
        if _stopped(rank, prev, r_hint, n, allow_stable=False):
            roots, status = _extract(A, B, rank, r_hint, cfg, q)
            if status == "ok" or h + cfg.check_period > cfg.max_iter:
                return _finish(prep, roots, status, h, history, cfg, stepper, variant, rank)
            # no certified basis yet; the next period sharpens the gap
        prev = rank
    exc = MaxIterExceeded(f"rank did not settle within {cfg.max_iter} iterations")
    exc.report = _finish(prep, np.zeros(0), "failure", h, history, cfg, stepper, variant, 0)
    raise exc


def _stabilizing_shift(B, cfg):
    n = B.shape[0]
    I = np.eye(n)
    for k in range(1, 41):
        beta = 2.0 ** (7 + k)
        N = B + beta * I
        if cond_est(N) < cfg.cond_cap:
            return k, beta, N
    raise IllConditioned("no power-of-two shift makes the companion matrix well conditioned")


def real_roots_stabilized(p, cfg: SignFlowConfig | None = None, r_hint: int | None = None) -> SignFlowReport:
    """Two coupled flows started at alpha i I + N and alpha i I - N.

    N = C_p + 2^(7+k) I with the smallest k >= 1 keeping cond(N) below
    ``cond_cap``.  Eigenvalues with |Im| < alpha go to 2i in the sum of the
    two iterates and all others go to 0, so the sum has the near-real
    eigenspace as its dominant eigenspace.
    """
    cfg = cfg or SignFlowConfig(variant="stabilized")
    prep = _prepare(p, cfg)
    n = prep.B.shape[0]
    if n == 0:
        return _trivial(prep, cfg, "stabilized")
    r_hint = None if r_hint is None else max(0, r_hint - prep.zeros)
    B = prep.B
    k, beta, N = _stabilizing_shift(B, cfg)
    a = 1j * cfg.alpha * np.eye(n)
    Y1, Y2 = a + N, a - N
    stepper = _Stepper(cfg)
    start = 7 + k
    history = []
    prev = None
    h = 0
    last = None
    while h < cfg.max_iter:
        try:
            Y1, Y2 = stepper(Y1), stepper(Y2)
        except IllConditioned:
            if last is None:
                raise
            return _fall_back(last, B, r_hint, cfg, prep.q, prep, history, stepper, "stabilized")
        h += 1
        if h < start or (h - start) % cfg.check_period:
            continue
        S = Y1 + Y2
        rank = flow_rank(S, cfg)
        history.append((h, rank))
        last = (S, rank, h)
        if _stopped(rank, prev, r_hint, n, allow_stable=False):
            roots, status = _extract(S, B, rank, r_hint, cfg, prep.q)
            if status == "ok" or h + cfg.check_period > cfg.max_iter:
                return _finish(prep, roots, status, h, history, cfg, stepper, "stabilized", rank)
        prev = rank
    exc = MaxIterExceeded(f"rank did not settle within {cfg.max_iter} iterations")
    exc.report = _finish(prep, np.zeros(0), "failure", h, history, cfg, stepper, "stabilized", 0)
    raise exc


def cayley_pretransform(M) -> np.ndarray:
    """P = (M/2 - iI)(M/2 + iI)^{-1}, then Y = (i/3)(P - P^{-1}).

    Real eigenvalues go to the unit circle under P and then into [-2/3, 2/3].
    """
    n = M.shape[0]
    I = np.eye(n)
    P = (0.5 * M - 1j * I) @ invert(0.5 * M + 1j * I)
    return (1j / 3.0) * (P - invert(P))


def _hybrid_shift(B, cfg):
    if cond_est(B) < cfg.cond_cap:
        return 0.0, B.copy()
    _, beta, N = _stabilizing_shift(B, cfg)
    return beta, N


def _disc_total(M):
    try:
        a = count_eigenvalues_disc(M, 1j, 0.5)
        b = count_eigenvalues_disc(M, -1j, 0.5)
    except (ZeroOnCircle, np.linalg.LinAlgError):
        return None
    return a + b


def real_roots_hybrid(p, cfg: SignFlowConfig | None = None, r_hint: int | None = None) -> SignFlowReport:
    """Sign steps until the nonreal images sit in the discs D(+-i, 1/2), then cubic steps.

    Phase 1 runs the inverting iteration from C_p + beta I; every
    ``check_period`` steps after log2(beta) the eigenvalues of the iterate in
    the two discs are counted.  Once the count equals n - r (or repeats),
    inversion-free cubic steps take over with a rank check after each one.
    Norm growth beyond ``divergence_cap`` reverts to the saved iterate and
    phase 1 resumes.
    """
    cfg = cfg or SignFlowConfig(variant="hybrid")
    prep = _prepare(p, cfg)
    n = prep.B.shape[0]
    if n == 0:
        return _trivial(prep, cfg, "hybrid")
    r_hint = None if r_hint is None else max(0, r_hint - prep.zeros)
    B = prep.B
    beta, M = _hybrid_shift(B, cfg)
    T = int(round(np.log2(beta))) if beta > 0 else 0
    stepper = _Stepper(cfg)
    history = []
    h = 0
    phase2 = False
    saved = None
    switched = None
    prev_count = None
    prev_rank = None
    next_check = T
    while h < cfg.max_iter:
        if not phase2:
            if h >= next_check:
                next_check = h + cfg.check_period
                cnt = _disc_total(M)
                history.append((h, "disc", cnt))
                target = None if r_hint is None else n - r_hint
                if cnt is not None and (cnt == target or (target is None and cnt == prev_count and cnt > 0)):
                    phase2 = True
                    saved = M
                    switched = h
                    prev_rank = None
                    if cfg.cayley_pretransform:
                        try:
                            M = cayley_pretransform(M)
                        except (IllConditioned, SingularMatrix):
                            M = saved
                    continue
                prev_count = cnt
            M = stepper(M)
            h += 1
            continue
        M = cubic_step(M) if cfg.variant != "quintic" else quintic_step(M)
        h += 1
        if not np.all(np.isfinite(M)) or np.abs(M).sum(axis=0).max() > cfg.divergence_cap:
            history.append((h, "diverged", None))
            M = saved
            phase2 = False
            next_check = h + cfg.check_period
            continue
        A = annihilator(M)
        if A is None:
            continue
        rank = flow_rank(A, cfg)
        history.append((h, "rank", rank))
        if _stopped(rank, prev_rank, r_hint, n, allow_stable=True):
            roots, status = _extract(A, B, rank, r_hint, cfg, prep.q)
            if status == "ok" or h + 1 > cfg.max_iter:
                return _finish(prep, roots, status, h, history, cfg, stepper, "hybrid", rank, switched)
        prev_rank = rank
    exc = MaxIterExceeded(f"hybrid flow did not settle within {cfg.max_iter} iterations")
    exc.report = _finish(prep, np.zeros(0), "failure", h, history, cfg, stepper, "hybrid", 0, switched)
    raise exc


def solve(p, cfg: SignFlowConfig | None = None, r_hint: int | None = None) -> SignFlowReport:
    """Dispatch on ``cfg.variant``."""
    cfg = cfg or SignFlowConfig()
    if cfg.variant == "stabilized":
        return real_roots_stabilized(p, cfg, r_hint)
    if cfg.variant in ("hybrid", "cubic", "quintic"):
        return real_roots_hybrid(p, cfg, r_hint)
    return real_roots_sign(p, r_hint, cfg)


__all__ = [
    "SignFlowConfig", "SignFlowReport", "mobius_step", "mobius_bound", "sign_step",
    "determinantal_scale", "cubic_step", "quintic_step", "newton_schultz_sign",
    "real_roots_sign", "real_roots_stabilized", "real_roots_hybrid", "real_eigs_sign",
    "cayley_pretransform", "annihilator", "solve",
]
