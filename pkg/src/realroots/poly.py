"""Univariate polynomials with ascending coefficients and the root maps
(shift, scaling, reversal, root squaring, Cayley) built on top of them."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.signal import fftconvolve

from .errors import DegreeDrop, DivisionByZeroPoly, Pole, ZeroScale

# below this length a direct convolution is both faster and more accurate
_FFT_MIN = 64


def _as_coeffs(c) -> np.ndarray:
    a = np.atleast_1d(np.asarray(c))
    if a.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    if a.size == 0:
        a = np.zeros(1)
    if np.iscomplexobj(a):
        a = a.astype(np.complex128)
        if not np.any(a.imag):
            a = a.real.copy()
    else:
        a = a.astype(np.float64)
    if not np.all(np.isfinite(a)):
        raise ValueError("coefficients must be finite")
    nz = np.flatnonzero(a)
    if nz.size == 0:
        return a[:1] * 0
    return a[: nz[-1] + 1].copy()


@dataclass(frozen=True, eq=False)
class Polynomial:
    """p(x) = sum_i coeffs[i] x^i.

    Trailing (leading-degree) zeros are stripped on construction, so the
    leading coefficient is nonzero unless the polynomial is identically 0.
    A polynomial whose coefficients all have zero imaginary part is stored
    with a real dtype.
    """

    coeffs: np.ndarray

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _as_coeffs(coeffs))
        self.coeffs.setflags(write=False)

    @classmethod
    def from_roots(cls, roots, lead=1.0) -> "Polynomial":
        c = np.array([lead], dtype=np.result_type(lead, np.asarray(roots), float))
        for z in np.atleast_1d(roots):
            c = np.convolve(c, [-z, 1.0])
        return cls(c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coeffs)

    @property
    def lead(self):
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        return Polynomial(self.coeffs / self.coeffs[-1])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0.0])
        return Polynomial(self.coeffs[1:] * np.arange(1, self.degree + 1))

    def __call__(self, x):
        return evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(self.coeffs == other.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        n = max(self.coeffs.size, other.coeffs.size)
        dt = np.result_type(self.coeffs, other.coeffs)
        c = np.zeros(n, dtype=dt)
        c[: self.coeffs.size] += self.coeffs
        c[: other.coeffs.size] += other.coeffs
        return Polynomial(c)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return Polynomial(self.coeffs * other)
        return poly_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, coeffs={self.coeffs!r})"


def _coerce(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(p)


def evaluate(p: Polynomial, x):
    """Horner evaluation; works elementwise on arrays of points."""
    p = _coerce(p)
    x = np.asarray(x)
    acc = np.zeros_like(x, dtype=np.result_type(x, p.coeffs, float)) + p.coeffs[-1]
    for c in p.coeffs[-2::-1]:
        acc = acc * x + c
    return acc[()] if acc.ndim == 0 else acc


def eval_with_derivative(p: Polynomial, x):
    """Return (p(x), p'(x)) by a single Horner sweep."""
    x = np.asarray(x)
    dt = np.result_type(x, p.coeffs, float)
    f = np.zeros_like(x, dtype=dt) + p.coeffs[-1]
    d = np.zeros_like(x, dtype=dt)
    for c in p.coeffs[-2::-1]:
        d = d * x + f
        f = f * x + c
    return f, d


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    a, b = _coerce(p).coeffs, _coerce(q).coeffs
    if min(a.size, b.size) < _FFT_MIN:
        return Polynomial(np.convolve(a, b))
    c = fftconvolve(a, b)
    return Polynomial(c)


def poly_divrem(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Synthetic division: p = quot*q + rem with deg rem < deg q."""
    p, q = _coerce(p), _coerce(q)
    if q.is_zero:
        raise DivisionByZeroPoly("division by the zero polynomial")
    m = q.degree
    if p.degree < m:
        return Polynomial([0.0]), p
    dt = np.result_type(p.coeffs, q.coeffs, float)
    r = p.coeffs.astype(dt).copy()
    quot = np.zeros(p.degree - m + 1, dtype=dt)
    lead = q.coeffs[-1]
    for k in range(p.degree - m, -1, -1):
        t = r[k + m] / lead
        quot[k] = t
        r[k : k + m + 1] -= t * q.coeffs
    rem = r[:m] if m > 0 else np.zeros(1, dtype=dt)
    return Polynomial(quot), Polynomial(rem)


def shift_scale(p: Polynomial, a=1.0, b=0.0) -> Polynomial:
    """q(x) = p(a*x + b); the roots of q are (x_j - b)/a."""
    p = _coerce(p)
    if a == 0:
        raise ZeroScale("scale factor a must be nonzero")
    dt = np.result_type(p.coeffs, a, b, float)
    c = p.coeffs.astype(dt).copy()
    n = p.degree
    if b != 0:
        # Taylor shift by repeated synthetic division (Horner's scheme)
        for i in range(n):
            for j in range(n - 1, i - 1, -1):
                c[j] += b * c[j + 1]
    if a != 1:
        c = c * np.power(np.asarray(a, dtype=dt), np.arange(n + 1))
    return Polynomial(c)


def reverse(p: Polynomial) -> Polynomial:
    """x^n p(1/x): reverses the coefficient order, inverting the roots."""
    p = _coerce(p)
    if p.coeffs[0] == 0:
        warnings.warn("p(0) = 0: reversal moves a root to infinity", RuntimeWarning, stacklevel=2)
    return Polynomial(p.coeffs[::-1])


def dandelin_square(p: Polynomial, method: str = "fft") -> Polynomial:
    """Root squaring: the monic q with roots x_j**2.

    q(x^2) = (-1)^n p(x) p(-x). With method="fft" the product is formed on
    the smallest power-of-two grid larger than 2n; "direct" uses an exact
    convolution, which keeps small coefficients accurate when the
    coefficients span many orders of magnitude.
    """
    p = _coerce(p).monic()
    n = p.degree
    c = p.coeffs
    c_neg = c * (-1.0) ** np.arange(n + 1)
    if method == "fft":
        k = 1
        while k <= 2 * n:
            k *= 2
        prod = np.fft.ifft(np.fft.fft(c, k) * np.fft.fft(c_neg, k))[: 2 * n + 1]
    elif method == "direct":
        prod = np.convolve(c, c_neg)
    else:
        raise ValueError(f"unknown method {method!r}")
    q = prod[::2] * (-1.0) ** n
    if p.is_real:
        q = np.real(q)
    q = np.array(q)
    q[-1] = 1.0
    return Polynomial(q)


def cayley_scalar(x, a: float = 1.0, direction: str = "line_to_circle"):
    """Cayley map y = (x - a i)/(x + a i) and its inverse x = a i (1 + y)/(1 - y)."""
    if a == 0:
        raise ZeroScale("Cayley parameter a must be nonzero")
    x = complex(x)
    ai = 1j * a
    if direction == "line_to_circle":
        if x + ai == 0:
            raise Pole("x = -a i is a pole of the Cayley map")
        return (x - ai) / (x + ai)
    if direction == "circle_to_line":
        if x == 1:
            raise Pole("y = 1 is a pole of the inverse Cayley map")
        return ai * (1 + x) / (1 - x)
    raise ValueError(f"unknown direction {direction!r}")


def cayley_poly(p: Polynomial, a: float = 1.0) -> Polynomial:
    """q(y) = (1 - y)^n p(a i (1 + y)/(1 - y)); roots of q are the Cayley images of roots of p."""
    p = _coerce(p)
    if a == 0:
        raise ZeroScale("Cayley parameter a must be nonzero")
    n = p.degree
    ai = 1j * a
    # leading coefficient of q is (-1)^n p(-a i)
    scale = max(1.0, abs(a)) ** n * np.abs(p.coeffs).sum()
    if abs(evaluate(p, -ai)) <= 1e-13 * scale:
        raise DegreeDrop("p(-a i) = 0: a root is mapped to infinity")
    plus = np.array([1.0, 1.0])
    minus = np.array([1.0, -1.0])
    pow_plus = [np.ones(1)]
    pow_minus = [np.ones(1)]
    for _ in range(n):
        pow_plus.append(np.convolve(pow_plus[-1], plus))
        pow_minus.append(np.convolve(pow_minus[-1], minus))
    q = np.zeros(n + 1, dtype=complex)
    aik = 1.0 + 0j
    for k in range(n + 1):
        q += p.coeffs[k] * aik * np.convolve(pow_plus[k], pow_minus[n - k])
        aik *= ai
    return Polynomial(q / q[-1])


def chebyshev(r: int) -> Polynomial:
    """Chebyshev polynomial of the first kind T_r by the three-term recurrence."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    t_prev, t = np.array([1.0]), np.array([0.0, 1.0])
    if r == 0:
        return Polynomial(t_prev)
    for _ in range(r - 1):
        nxt = np.zeros(t.size + 1)
        nxt[1:] = 2 * t
        nxt[: t_prev.size] -= t_prev
        t_prev, t = t, nxt
    return Polynomial(t)


def strip_zero_roots(p: Polynomial) -> tuple[Polynomial, int]:
    """Factor out x^m when the m lowest coefficients vanish exactly."""
    p = _coerce(p)
    nz = np.flatnonzero(p.coeffs)
    m = int(nz[0]) if nz.size else 0
    return (Polynomial(p.coeffs[m:]) if m else p), m


# ---------------------------------------------------------------- file I/O

def read_polynomial(path) -> Polynomial:
    """Read the text format (n, then n+1 lines `re [im]`) or the JSON format."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        coeffs = [complex(*c) if isinstance(c, (list, tuple)) else complex(c) for c in data["coeffs"]]
        if "degree" in data and int(data["degree"]) != len(coeffs) - 1:
            raise ValueError("degree field does not match the number of coefficients")
        return Polynomial(np.array(coeffs))
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty polynomial file")
    n = int(lines[0])
    rows = lines[1:]
    if len(rows) != n + 1:
        raise ValueError(f"expected {n + 1} coefficient lines, found {len(rows)}")
    coeffs = []
    for row in rows:
        parts = row.split()
        if len(parts) not in (1, 2):
            raise ValueError(f"bad coefficient line: {row!r}")
        coeffs.append(complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0))
    return Polynomial(np.array(coeffs))


def polynomial_to_json(p: Polynomial) -> dict:
    c = np.asarray(p.coeffs, dtype=complex)
    return {"degree": p.degree, "coeffs": [[float(z.real), float(z.imag)] for z in c]}


def write_polynomial(p: Polynomial, path, fmt: str = "json") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(polynomial_to_json(p)) + "\n")
    elif fmt == "text":
        c = np.asarray(p.coeffs, dtype=complex)
        body = "\n".join(f"{float(z.real)!r} {float(z.imag)!r}" for z in c)
        path.write_text(f"{p.degree}\n{body}\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
