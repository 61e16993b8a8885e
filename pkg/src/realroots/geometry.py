"""Root geometry in the complex plane: winding-number counts in discs, root
radii from the Newton polygon, bounds on the largest root radius and
proximity brackets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PrecisionLoss, RootAtPoint, ZeroOnCircle
from .poly import Polynomial, dandelin_square, evaluate, reverse, shift_scale, strip_zero_roots

MAX_SQUARINGS = 6
DYNAMIC_RANGE_CAP = 1e250


@dataclass(frozen=True)
class DiscQuery:
    center: complex = 0j
    radius: float = 1.0
    squarings: int = 0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if not 0 <= self.squarings <= MAX_SQUARINGS:
            raise ValueError(f"squarings must lie in [0, {MAX_SQUARINGS}]")


def sample_count(n: int) -> int:
    """n' = 16 ceil(log2 n), never fewer than 32."""
    return max(32, 16 * int(np.ceil(np.log2(max(n, 2)))))


def unit_circle_values(p: Polynomial, N: int) -> np.ndarray:
    """p at the N-th roots of unity by folding the coefficients mod N and one FFT."""
    c = np.asarray(p.coeffs, dtype=complex)
    folded = np.zeros(N, dtype=complex)
    np.add.at(folded, np.arange(c.size) % N, c)
    return np.fft.ifft(folded) * N


def _quadrant(v):
    return np.where(v.real >= 0, np.where(v.imag >= 0, 0, 3), np.where(v.imag >= 0, 1, 2))


def _winding_unit(p: Polynomial) -> int:
    N = sample_count(p.degree)
    vals = unit_circle_values(p, N)
    peak = np.abs(vals).max()
    if peak == 0 or np.abs(vals).min() < 1e-13 * peak:
        raise ZeroOnCircle("polynomial nearly vanishes on the circle")
    theta = 2 * np.pi * np.arange(N + 1) / N
    vals = np.append(vals, vals[0])
    # refine every arc whose argument change is not clearly below a quarter turn
    pts = [(theta[0], vals[0])]
    stack = [(theta[k], vals[k], theta[k + 1], vals[k + 1], 0) for k in range(N - 1, -1, -1)]
    while stack:
        t0, v0, t1, v1, depth = stack.pop()
        if abs(np.angle(v1 / v0)) < 0.45 * np.pi or depth >= 30:
            pts.append((t1, v1))
            continue
        tm = 0.5 * (t0 + t1)
        vm = evaluate(p, np.exp(1j * tm))
        if abs(vm) < 1e-13 * peak:
            raise ZeroOnCircle("polynomial nearly vanishes on the circle")
        stack.append((tm, vm, t1, v1, depth + 1))
        stack.append((t0, v0, tm, vm, depth + 1))
    q = _quadrant(np.array([v for _, v in pts]))
    step = (np.diff(q) + 4) % 4
    step = np.where(step == 3, -1, step)
    return int(round(step.sum() / 4))


def count_roots_disc(p: Polynomial, q: DiscQuery) -> int:
    """Number of roots in D(center, radius) by the argument principle.

    The disc is mapped to the unit disc and p is sampled at n' roots of unity;
    the count is the number of quarter turns of p(z) around the circle.  The
    count is reliable when the disc is well isolated from the other roots.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    radius = q.radius
    for attempt in range(2):
        P = shift_scale(p, radius, q.center)
        try:
            return _winding_unit(P)
        except ZeroOnCircle:
            if attempt:
                raise
            radius *= 1 + 1e-3
    raise AssertionError("unreachable")


def _check_range(p: Polynomial):
    a = np.abs(p.coeffs)
    nz = a[a > 0]
    if nz.size and nz.max() / nz.min() > DYNAMIC_RANGE_CAP:
        raise PrecisionLoss("coefficient dynamic range exceeds 1e250")


def _square(p: Polynomial) -> Polynomial:
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            q = dandelin_square(p, method="direct")
    except ValueError as exc:  # overflow to inf
        raise PrecisionLoss("root squaring overflowed") from exc
    _check_range(q)
    return q


def count_with_squaring(p: Polynomial, q: DiscQuery) -> int:
    """Count roots in a weakly isolated disc after h root squarings of the normalized polynomial."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    P = shift_scale(p, q.radius, q.center)
    for _ in range(q.squarings):
        P = _square(P)
    return count_roots_disc(P, DiscQuery(0j, 1.0, 0))


def newton_polygon_radii(p: Polynomial) -> np.ndarray:
    """Root-radius estimates from the upper convex hull of (i, log|p_i|), descending."""
    c = np.abs(p.coeffs)
    with np.errstate(divide="ignore"):
        L = np.log(c)
    hull: list[tuple[int, float]] = []
    for i in range(c.size):
        if not np.isfinite(L[i]):
            continue
        while len(hull) >= 2:
            (i1, l1), (i2, l2) = hull[-2], hull[-1]
            if (l2 - l1) * (i - i1) <= (L[i] - l1) * (i2 - i1):
                hull.pop()
            else:
                break
        hull.append((i, L[i]))
    rad = []
    for (i1, l1), (i2, l2) in zip(hull, hull[1:]):
        rad += [np.exp(-(l2 - l1) / (i2 - i1))] * (i2 - i1)
    return np.sort(np.array(rad))[::-1]


def radii_factor(n: int, k: int) -> float:
    return (2.0 * n) ** (1.0 / 2**k)


def root_radii(p: Polynomial, refine_k: int = 0) -> np.ndarray:
    """Lower estimates r~_j (descending) with r~_j <= r_j <= (2n)^(1/2^k) r~_j.

    Radii of the k-times squared polynomial are estimated from its Newton
    polygon, centred in the factor-2n window, and then mapped back by the
    2^k-th root.  Exact zero roots are reported as radius 0.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if not 0 <= refine_k <= MAX_SQUARINGS:
        raise ValueError(f"refine_k must lie in [0, {MAX_SQUARINGS}]")
    q, m = strip_zero_roots(p)
    n = q.degree
    if n == 0:
        return np.zeros(m)
    for _ in range(refine_k):
        q = _square(q)
    rho = newton_polygon_radii(q)
    est = (rho / np.sqrt(2.0 * n)) ** (1.0 / 2**refine_k)
    return np.concatenate([est, np.zeros(m)])


def r1_bounds(p: Polynomial) -> tuple[float, float]:
    """(gamma/n, 2 gamma) with gamma = max_i |p_{n-i}/p_n|^(1/i); brackets the largest root radius."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    n = p.degree
    if n < 1:
        raise ValueError("need degree >= 1")
    c = p.coeffs
    i = np.arange(1, n + 1)
    g = float(np.max(np.abs(c[n - i] / c[n]) ** (1.0 / i)))
    return g / n, 2.0 * g


def proximity(p: Polynomial, c, refine_k: int = 0) -> tuple[float, float]:
    """Bracket min_j |x_j - c| by bounding the largest root radius of the shifted reverse polynomial."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    q = shift_scale(p, 1.0, c)
    if q.coeffs[0] == 0 or abs(q.coeffs[0]) <= 1e-15 * np.abs(q.coeffs).max():
        raise RootAtPoint("c is a root of p")
    rev = reverse(q)
    lo, hi = r1_bounds(rev)
    lower, upper = 1.0 / hi, 1.0 / lo
    if refine_k:
        est = root_radii(rev, refine_k)[0]
        f = radii_factor(rev.degree, refine_k)
        lower, upper = max(lower, 1.0 / (f * est)), min(upper, 1.0 / est)
    return lower, upper


def count_eigenvalues_disc(M, center, radius: float, points: int = 64) -> int:
    """Eigenvalues of M inside D(center, radius) by trapezoidal quadrature of the resolvent trace.

    (1/2 pi i) \\oint tr((zI - M)^{-1}) dz with z = c + rho e^{it} becomes the
    mean of tr((z_k I - M)^{-1}) (z_k - c).  Raises ZeroOnCircle when the
    result is not clearly an integer, i.e. an eigenvalue is near the contour.
    """
    M = np.asarray(M)
    n = M.shape[0]
    I = np.eye(n)
    total = 0j
    for t in 2 * np.pi * np.arange(points) / points:
        z = center + radius * np.exp(1j * t)
        R = np.linalg.solve(z * I - M, I)
        total += np.trace(R) * (z - center)
    v = total / points
    k = round(v.real)
    if not np.isfinite(v) or abs(v - k) >= 0.25:
        raise ZeroOnCircle(f"quadrature gave {v:.3f}, an eigenvalue is close to the circle")
    return int(k)
