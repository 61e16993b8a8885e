"""Companion matrices and arithmetic modulo p(x).

Residues of degree < n modulo a monic p represent the matrices f(C_p): the
coefficient vector of f mod p is f(C_p) e_0, and the eigenvalues of f(C_p)
are the values f(x_j) at the roots of p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch, ModulusMismatch, NotInvertible, ZeroLeadingCoefficient
from .linalg import ILL_COND
from .poly import Polynomial, evaluate, poly_divrem, poly_mul


def companion(p: Polynomial) -> np.ndarray:
    """Ones on the subdiagonal, last column -p_i/p_n."""
    c = p.coeffs
    n = p.degree
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if c[-1] == 0:
        raise ZeroLeadingCoefficient("leading coefficient is zero")
    C = np.zeros((n, n), dtype=c.dtype)
    C[np.arange(1, n), np.arange(n - 1)] = 1.0
    C[:, -1] = -c[:-1] / c[-1]
    return C


def companion_matvec(p: Polynomial, v) -> np.ndarray:
    """C_p @ v without forming C_p: down-shift plus a rank-one column update."""
    v = np.asarray(v)
    n = p.degree
    if v.shape[0] != n:
        raise DimensionMismatch(f"vector has length {v.shape[0]}, expected {n}")
    c = p.coeffs
    col = -c[:-1] / c[-1]
    out = np.zeros(v.shape, dtype=np.result_type(v, c))
    out[1:] = v[:-1]
    if v.ndim == 1:
        out += col * v[-1]
    else:
        out += np.outer(col, v[-1])
    return out


@dataclass(frozen=True, eq=False)
class FrobeniusElement:
    """An element f mod p of the algebra generated by C_p."""

    modulus: Polynomial
    residue: np.ndarray

    def __post_init__(self):
        m = self.modulus if isinstance(self.modulus, Polynomial) else Polynomial(self.modulus)
        if m.lead != 1:
            m = m.monic()
        r = np.atleast_1d(np.asarray(self.residue))
        n = m.degree
        if r.size > n:
            r = poly_divrem(Polynomial(r), m)[1].coeffs
        out = np.zeros(n, dtype=np.result_type(r, m.coeffs, float))
        out[: r.size] = r
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "residue", out)

    @classmethod
    def of(cls, f, p: Polynomial) -> "FrobeniusElement":
        f = f.coeffs if isinstance(f, Polynomial) else np.atleast_1d(np.asarray(f))
        return cls(p, f)

    @property
    def n(self) -> int:
        return self.modulus.degree

    def polynomial(self) -> Polynomial:
        return Polynomial(self.residue)

    def values_at(self, points) -> np.ndarray:
        return evaluate(self.polynomial(), np.asarray(points))

    def matrix(self) -> np.ndarray:
        """Dense f(C_p); column j equals C_p^j f."""
        n = self.n
        Y = np.empty((n, n), dtype=np.result_type(self.residue, self.modulus.coeffs))
        Y[:, 0] = self.residue
        for j in range(1, n):
            Y[:, j] = companion_matvec(self.modulus, Y[:, j - 1])
        return Y

    def _same(self, other):
        if not isinstance(other, FrobeniusElement):
            return FrobeniusElement(self.modulus, np.atleast_1d(np.asarray(other)))
        if other.modulus is not self.modulus and not (
            other.modulus.coeffs.shape == self.modulus.coeffs.shape
            and np.allclose(other.modulus.coeffs, self.modulus.coeffs, rtol=1e-14, atol=0)
        ):
            raise ModulusMismatch("elements live modulo different polynomials")
        return other

    def __add__(self, other):
        other = self._same(other)
        return FrobeniusElement(self.modulus, self.residue + other.residue)

    def __sub__(self, other):
        other = self._same(other)
        return FrobeniusElement(self.modulus, self.residue - other.residue)

    def __mul__(self, other):
        if np.isscalar(other):
            return FrobeniusElement(self.modulus, self.residue * other)
        return frob_mul(self, other)

    __rmul__ = __mul__


def frob_mul(f: FrobeniusElement, g: FrobeniusElement) -> FrobeniusElement:
    """(f*g) mod p by FFT-backed multiplication and synthetic division."""
    g = f._same(g)
    prod = poly_mul(f.polynomial(), g.polynomial())
    rem = poly_divrem(prod, f.modulus)[1]
    return FrobeniusElement(f.modulus, rem.coeffs)


def _euclid_inverse(f: FrobeniusElement, pivot_tol: float):
    """Extended Euclid on (p, f); returns u with f*u = 1 mod p or None on a weak pivot."""
    p = f.modulus
    r0, r1 = p, f.polynomial()
    s0, s1 = Polynomial([0.0]), Polynomial([1.0])
    scale = max(p.norm(), r1.norm())
    while r1.degree > 0:
        if abs(r1.lead) < pivot_tol * max(r1.norm(), 1e-300) or r1.norm() < pivot_tol * scale:
            return None
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    c = r1.coeffs[0]
    if r1.is_zero or abs(c) < pivot_tol * scale:
        return None
    return FrobeniusElement(p, (s1 * (1.0 / c)).coeffs)


def _residual(f, u) -> float:
    e = frob_mul(f, u).residue.copy()
    e[0] -= 1.0
    return float(np.linalg.norm(e))


def frob_inv(f: FrobeniusElement, method: str = "auto", roots=None, tol: float = 1e-8) -> FrobeniusElement:
    """Inverse modulo p.

    ``auto`` tries the extended Euclidean algorithm first and verifies the
    round trip; on a weak pivot or a poor residual it solves the linear system
    f(C_p) u = e_0 instead.  When approximate roots of p are supplied, an
    element that nearly vanishes at one of them is rejected up front.
    """
    n = f.n
    if roots is not None:
        vals = np.abs(f.values_at(roots))
        if vals.min() <= tol * max(1.0, np.abs(f.residue).max()):
            raise NotInvertible("residue nearly vanishes at a root of the modulus")
    if method in ("auto", "euclid"):
        u = _euclid_inverse(f, 1e-12)
        if u is not None and np.all(np.isfinite(u.residue)) and _residual(f, u) <= tol:
            return u
        if method == "euclid":
            raise NotInvertible("Euclidean inversion lost its pivot")
    Y = f.matrix()
    try:
        lu, piv, info = sla.lapack.zgetrf(Y) if np.iscomplexobj(Y) else sla.lapack.dgetrf(Y)
    except ValueError as exc:  # pragma: no cover - defensive
        raise NotInvertible(str(exc)) from exc
    anorm = np.abs(Y).sum(axis=0).max()
    if info > 0 or np.min(np.abs(np.diag(lu))) < 1e-14 * anorm:
        raise NotInvertible("f(C_p) is singular")
    gecon = sla.lapack.zgecon if np.iscomplexobj(Y) else sla.lapack.dgecon
    rcond = gecon(lu, anorm, norm="1")[0]
    if rcond == 0 or 1.0 / rcond > ILL_COND:
        raise NotInvertible("f shares an approximate factor with the modulus")
    e0 = np.zeros(n, dtype=Y.dtype)
    e0[0] = 1.0
    u = sla.lu_solve((lu, piv), e0, check_finite=False)
    return FrobeniusElement(f.modulus, u)
