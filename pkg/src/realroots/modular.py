"""The sign iteration carried out on residues modulo p(x).

y_{k+1} = (y_k - 1/y_k)/2 mod p has the values mobius^k(x_j) at the roots
of p, so t_k = y_k^2 + 1 mod p nearly vanishes at every nonreal root.  The
approximate gcd of p and t_k is then the nonreal factor and the cofactor
v_k = p / agcd(p, t_k) carries the real roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MaxIterExceeded, NotInvertible
from .frobenius import FrobeniusElement, frob_inv, frob_mul
from .poly import Polynomial
from .refine import oracle_roots, polish_roots, scaled_residuals
from .sign_iter import SignFlowReport

# restart offsets for y_0 = x + sigma when an image of a real root hits 0
SHIFTS = (0.05, -0.0731, 0.1163)


@dataclass(frozen=True)
class AgcdResult:
    g: Polynomial
    d: int
    v: Polynomial
    u: Polynomial
    backward_error: float
    division_error: float = 0.0


@dataclass
class ModularConfig:
    max_iter: int = 30
    tol: float = 1e-6
    inv_method: str = "auto"
    max_shifts: int = 3
    refine: bool = True


def sqrt_mod_step(y: FrobeniusElement, method: str = "auto") -> FrobeniusElement:
    """(y - 1/y)/2 mod p."""
    return (y - frob_inv(y, method=method)) * 0.5


def t_polynomial(y: FrobeniusElement) -> Polynomial:
    """y^2 + 1 mod p."""
    t = frob_mul(y, y).residue.copy()
    t[0] += 1.0
    return Polynomial(t)


def _conv_matrix(c: np.ndarray, cols: int) -> np.ndarray:
    """Matrix of x -> c * x for x with ``cols`` coefficients."""
    A = np.zeros((c.size + cols - 1, cols), dtype=c.dtype)
    for j in range(cols):
        A[j : j + c.size, j] = c
    return A


def _try_degree(pc: np.ndarray, tc: np.ndarray, d: int):
    """Least-squares p u = t v with deg v = n - d (monic) and deg u = deg t - d."""
    n, m = pc.size - 1, tc.size - 1
    nv, nu = n - d, m - d
    dt = np.result_type(pc, tc)
    T = _conv_matrix(tc, nv + 1)
    A = np.hstack([_conv_matrix(pc, nu + 1), -T[:, :nv]]).astype(dt)
    b = T[:, nv].astype(dt)  # the monic term t * x^nv moved to the right-hand side
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    res = float(np.linalg.norm(A @ x - b))
    u = x[: nu + 1]
    v = np.concatenate([x[nu + 1 :], [1.0]])
    Cv = _conv_matrix(v, d + 1)
    g, *_ = np.linalg.lstsq(Cv, pc, rcond=None)
    div = float(np.linalg.norm(Cv @ g - pc))
    return res, div, u, v, g


def agcd(p: Polynomial, t: Polynomial, tol: float = 1e-6, degree: int | None = None) -> AgcdResult:
    """Approximate gcd of p and t through the Sylvester least-squares system.

    Both inputs are scaled to unit norm.  A degree d is accepted when the
    system residual is at most tol * (||p|| + ||t||) and the cofactor v
    divides p with backward error at most 10 * tol.  The search runs from
    min(deg t, n - 1) downwards; ``degree`` restricts it to a single value.
    Coprime input gives d = 0, g = 1, v = p.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    t = t if isinstance(t, Polynomial) else Polynomial(t)
    n = p.degree
    pc = p.coeffs / p.norm()
    if t.is_zero or t.norm() <= tol * p.norm():
        # t vanishes at every root of p
        return AgcdResult(p.monic(), n, Polynomial([1.0]), Polynomial([0.0]), 0.0, 0.0)
    tc = t.coeffs / t.norm()
    m = t.degree
    if degree is not None:
        candidates = [degree] if 0 < degree <= min(m, n - 1) else []
    else:
        candidates = range(min(m, n - 1), 0, -1)
    for d in candidates:
        res, div, u, v, g = _try_degree(pc, tc, d)
        if res <= 2.0 * tol and div <= 10.0 * tol:
            return AgcdResult(Polynomial(g), d, Polynomial(v), Polynomial(u), res / 2.0, div)
    return AgcdResult(Polynomial([1.0]), 0, p, Polynomial([1.0]), np.inf, 0.0)


def _real_roots_of(v: Polynomial, p: Polynomial, refine: bool) -> np.ndarray:
    if v.degree < 1:
        return np.zeros(0)
    z = oracle_roots(v)
    if refine:
        z = polish_roots(p, z.astype(complex))
    return np.sort(z.real)


def real_roots_modular(p, r: int | None = None, cfg: ModularConfig | None = None) -> SignFlowReport:
    """Real roots from the cofactor of agcd(p, y_k^2 + 1).

    With r known the agcd is only attempted at degree n - r; otherwise the
    largest accepted degree must repeat at two consecutive iterations.  When
    an image of a real root reaches 0 the run restarts from y_0 = x + sigma.
    The report's ``iterations`` is k of the successful run; ``rank_history``
    lists (run, k, d) for every attempt including abandoned runs.
    """
    cfg = cfg or ModularConfig()
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    n = p.degree
    if n < 1:
        raise ValueError("need degree >= 1")
    target = None if r is None else n - r
    history = []
    sigmas = (0.0,) + SHIFTS[: cfg.max_shifts]
    for run, sigma in enumerate(sigmas):
        y = FrobeniusElement(p, [sigma, 1.0] if n > 1 else [sigma])
        prev_d = None
        try:
            for k in range(1, cfg.max_iter + 1):
                y = sqrt_mod_step(y, cfg.inv_method)
                t = t_polynomial(y)
                res = agcd(p, t, cfg.tol, degree=target)
                history.append((run, k, res.d))
                done = (res.d == target) if target is not None else (res.d > 0 and res.d == prev_d)
                if target == n and res.d == n:
                    done = True
                if target == 0:
                    done = True
                if done:
                    roots = _real_roots_of(res.v, p, cfg.refine) if res.d < n else np.zeros(0)
                    return SignFlowReport(
                        roots=roots, iterations=k, rank_history=history,
                        residuals=scaled_residuals(p, roots) if roots.size else np.zeros(0),
                        status="ok" if run == 0 else "ill_conditioned_shifted",
                        r_detected=n - res.d, shifts=run, variant="modular",
                    )
                prev_d = res.d
        except NotInvertible:
            history.append((run, None, "not_invertible"))
            continue
        break
    exc = MaxIterExceeded("agcd degree never reached the target")
    exc.report = SignFlowReport(np.zeros(0), cfg.max_iter, history, status="failure", variant="modular")
    raise exc
