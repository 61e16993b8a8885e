"""Functional root iterations (Newton, Ehrlich-Aberth, Weierstrass) and the
reference all-roots solver used to score every other method."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DerivativeVanished, MaxIterExceeded, OracleDisagreement
from .frobenius import companion
from .linalg import eigenvalues
from .poly import Polynomial, eval_with_derivative, evaluate, strip_zero_roots


ORACLE_MAX_ITER = 3000


@dataclass(frozen=True)
class RefineReport:
    roots: np.ndarray
    residuals: np.ndarray
    iterations: int
    converged: np.ndarray


def scaled_residuals(p: Polynomial, z) -> np.ndarray:
    """|p(z)| / (||p|| max(1, |z|)^n), computed without overflow."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    n = p.degree
    c = p.coeffs
    out = np.empty(z.size)
    small = np.abs(z) <= 1
    out[small] = np.abs(evaluate(p, z[small]))
    if np.any(~small):
        w = 1.0 / z[~small]
        out[~small] = np.abs(evaluate(Polynomial(c[::-1]), w))
    return out / np.linalg.norm(c) if n >= 0 else out


def newton_ratio(p: Polynomial, z):
    """p(z)/p'(z) elementwise, using the reversed polynomial when |z| > 1."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    n = p.degree
    out = np.empty(z.size, dtype=complex)
    small = np.abs(z) <= 1
    with np.errstate(divide="ignore", invalid="ignore"):
        if np.any(small):
            f, d = eval_with_derivative(p, z[small])
            out[small] = f / d
        if np.any(~small):
            zz = z[~small]
            w = 1.0 / zz
            rev = Polynomial(p.coeffs[::-1])
            f, d = eval_with_derivative(rev, w)
            # p = z^n rev(w), p'/p = n/z - w^2 rev'(w)/rev(w)
            out[~small] = 1.0 / (n * w - w * w * d / f)
    return out


def newton(p: Polynomial, y0, max_iter: int = 50, tol: float = 1e-13):
    """Newton's iteration from y0; returns (root, iterations)."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    y = y0
    for it in range(1, max_iter + 1):
        f, d = eval_with_derivative(p, y)
        if f == 0:
            return y, it - 1
        if d == 0:
            raise DerivativeVanished(f"p'(y) = 0 at y = {y}")
        step = f / d
        y = y - step
        if not np.isfinite(y):
            raise DerivativeVanished("Newton step overflowed")
        if abs(step) <= tol * max(1.0, abs(y)):
            return y, it
    raise MaxIterExceeded(f"Newton did not converge in {max_iter} steps")


def polish_roots(p: Polynomial, xs, max_iter: int = 60, radius: float = 0.1) -> np.ndarray:
    """Guarded Newton polishing.

    Each start keeps the iterate with the smallest scaled residual among those
    within ``radius * max(|x|, 1e-3)`` of it, so a step can never hand a root
    to a neighbour and slow (clustered) convergence still improves the value.
    """
    xs = np.asarray(xs)
    out = xs.copy()
    cplx = np.iscomplexobj(xs) or not p.is_real
    if cplx:
        out = out.astype(complex)
    for i, x in enumerate(xs):
        best, best_res = x, scaled_residuals(p, x)[0]
        reach = radius * max(abs(x), 1e-3)
        y = x
        for _ in range(max_iter):
            step = newton_ratio(p, y)[0]
            if not cplx:
                step = step.real
            if step == 0 or not np.isfinite(step):
                break
            y = y - step
            if not np.isfinite(y) or abs(y - x) > reach:
                break
            res = scaled_residuals(p, y)[0]
            if res < best_res:
                best, best_res = y, res
            if abs(step) <= 1e-15 * max(1.0, abs(y)):
                break
        out[i] = best
    return out


def _pairwise_inverse_sum(z):
    D = z[:, None] - z[None, :]
    np.fill_diagonal(D, 1.0)
    if np.any(np.abs(D) < 1e-14):
        return None
    S = 1.0 / D
    np.fill_diagonal(S, 0.0)
    return S.sum(axis=1)


def _jitter(z, attempt):
    phase = np.exp(1j * (0.7 + attempt) * np.arange(z.size))
    return z + 1e-10 * np.maximum(1.0, np.abs(z)) * phase


def aberth(p: Polynomial, z0, max_iter: int = 500, tol: float = 1e-13) -> RefineReport:
    """Simultaneous Ehrlich-Aberth iteration, e_i = p'/p(z_i) - sum_j 1/(z_i - z_j)."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    z = np.array(z0, dtype=complex)
    done = np.zeros(z.size, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        s = _pairwise_inverse_sum(z)
        if s is None:
            z = _jitter(z, it)
            continue
        ratio = newton_ratio(p, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            corr = ratio / (1.0 - ratio * s)
        corr[~np.isfinite(corr)] = 0.0  # exact hits of a root
        corr[done] = 0.0
        z = z - corr
        done |= np.abs(corr) <= tol * np.maximum(1.0, np.abs(z))
        if done.all():
            break
    return RefineReport(z, scaled_residuals(p, z), it, done)


def wdk(p: Polynomial, z0, max_iter: int = 500, tol: float = 1e-13) -> RefineReport:
    """Weierstrass (Durand-Kerner) iteration z_i -= p(z_i) / (p_n prod_{j!=i} (z_i - z_j))."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    z = np.array(z0, dtype=complex)
    done = np.zeros(z.size, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        D = z[:, None] - z[None, :]
        np.fill_diagonal(D, 1.0)
        if np.any(np.abs(D) < 1e-14):
            z = _jitter(z, it)
            continue
        corr = evaluate(p, z) / (p.lead * D.prod(axis=1))
        corr[done] = 0.0
        z = z - corr
        done |= np.abs(corr) <= tol * np.maximum(1.0, np.abs(z))
        if done.all():
            break
    return RefineReport(z, scaled_residuals(p, z), it, done)


def gamma_plus(p: Polynomial) -> float:
    """max_i |p_{n-i}/p_n|^{1/i}."""
    c = p.coeffs
    n = p.degree
    i = np.arange(1, n + 1)
    with np.errstate(divide="ignore"):
        vals = np.abs(c[n - i] / c[n]) ** (1.0 / i)
    return float(vals.max()) if n else 0.0


def circle_start(n: int, radius: float, phase: float = 0.371) -> np.ndarray:
    return radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + phase))


def match_distance(a, b) -> float:
    """Largest matched distance under an optimal assignment (inf if one side is empty)."""
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return np.inf
    cost = np.abs(a[:, None] - b[None, :])
    i, j = linear_sum_assignment(cost)
    return float(cost[i, j].max())


def oracle_roots(p: Polynomial, seed: int = 0) -> np.ndarray:
    """All roots by Aberth from a circle start, cross-checked against companion eigenvalues."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.is_zero:
        raise ValueError("the zero polynomial has no finite root set")
    q, m = strip_zero_roots(p)
    zeros = np.zeros(m, dtype=complex)
    n = q.degree
    if n == 0:
        return zeros
    if n == 1:
        return np.concatenate([zeros, [complex(-q.coeffs[0] / q.coeffs[1])]])
    radius = 2.0 * gamma_plus(q)
    ref = eigenvalues(companion(q))
    tol = 1e-6 * max(1.0, radius / 2.0)
    rng = np.random.default_rng(seed)
    phases = [0.371] + list(rng.uniform(0, 2 * np.pi, 3))
    best = None
    for ph in phases:
        # one dominant root leaves the rest far inside the start circle; they need many steps
        rep = aberth(q, circle_start(n, radius, ph), max_iter=ORACLE_MAX_ITER)
        if not np.all(np.isfinite(rep.roots)):
            continue
        d = match_distance(rep.roots, ref)
        if d <= tol:
            return np.concatenate([zeros, rep.roots])
        if best is None or d < best:
            best = d
    raise OracleDisagreement(
        f"Aberth and companion eigenvalues disagree by {best:.3e} (tolerance {tol:.1e})"
    )
