"""Input generators for the experiment families and a deterministic suite runner."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import OracleDisagreement, RealRootsError
from .modular import ModularConfig, real_roots_modular
from .poly import Polynomial, chebyshev
from .refine import match_distance, oracle_roots
from .sign_iter import SignFlowConfig, real_eigs_sign, real_roots_hybrid, real_roots_sign, real_roots_stabilized

POLY_FAMILIES = ("mignotte", "I", "II", "III", "IV", "V", "random_product", "fixed")
MATRIX_FAMILIES = ("tridiag", "rotated_diag", "complex_symmetric")
ALGOS = ("sign", "stabilized", "hybrid", "modular", "oracle")
CSV_COLUMNS = ["family", "n", "r", "trials", "failures", "iter_mean", "iter_std", "err_mean", "err_std", "seed"]
REAL_TOL = 1e-6


@dataclass
class BenchRecord:
    family: str
    n: int
    r: int
    trials: int
    failures: int
    iteration_mean: float
    iteration_std: float
    error_mean: float
    error_std: float
    seed: int
    detail: list = field(default_factory=list, repr=False)

    def row(self) -> list:
        def fmt(x):
            return "" if not np.isfinite(x) else f"{x:.6g}"

        return [self.family, self.n, self.r, self.trials, self.failures,
                fmt(self.iteration_mean), fmt(self.iteration_std),
                fmt(self.error_mean), fmt(self.error_std), self.seed]


def trial_rng(seed: int, n: int, r: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, n, r, trial]))


def gen_mignotte(n: int) -> Polynomial:
    """x^n + (100x - 1)^3."""
    if n < 4:
        raise ValueError("need n >= 4")
    c = np.zeros(n + 1)
    c[n] = 1.0
    c[:4] += [-1.0, 300.0, -3e4, 1e6]
    return Polynomial(c)


def gen_type(t: str, n: int, r: int, seed=0) -> Polynomial:
    """Benchmark families: a Chebyshev factor T_r times a degree n - r cofactor.

    I: x^(n-r) - 1.  II: 1 + 2x + ... + (n-r+1)x^(n-r).
    III: (x+1)(x+a)...(x+a^(n-r-1)) with a = i/100 (complex coefficients).
    IV: x^(n-3) - (ax - 1)^3 with a = r, no Chebyshev factor.
    V and random_product: i.i.d. standard Gaussian cofactor coefficients.
    ``seed`` may be an int or a Generator.
    """
    if t == "IV":
        if n < 4:
            raise ValueError("need n >= 4")
        a = float(r)
        c = np.zeros(n - 2)
        c[-1] = 1.0
        c[:4] -= [-1.0, 3 * a, -3 * a * a, a**3]
        return Polynomial(c)
    if not 0 <= r < n:
        raise ValueError("need 0 <= r < n")
    m = n - r
    if t == "I":
        q = np.zeros(m + 1)
        q[0], q[m] = -1.0, 1.0
    elif t == "II":
        q = np.arange(1, m + 2, dtype=float)
    elif t == "III":
        a = 1j / 100
        q = np.array([1.0 + 0j])
        for j in range(m):
            q = np.convolve(q, [a**j, 1.0])
    elif t in ("V", "random_product"):
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        q = rng.standard_normal(m + 1)
    else:
        raise ValueError(f"unknown polynomial type {t!r}")
    return Polynomial(np.convolve(chebyshev(r).coeffs, q))


def _orthogonal(n: int, rng) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def gen_matrix(t: str, n: int, r: int, seed=0, return_real: bool = False):
    """Matrix families.

    tridiag: Gaussian tridiagonal (r ignored).  rotated_diag: Q^T S Q with r
    real Gaussian and n - r complex Gaussian (a + bi)/sqrt(2) diagonal entries
    and a Haar orthogonal Q.  complex_symmetric: U^T S U with nonreal entries
    a + bi.  With ``return_real`` the constructed real eigenvalues are also
    returned (None for tridiag).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if t == "tridiag":
        A = np.diag(rng.standard_normal(n)) + np.diag(rng.standard_normal(n - 1), 1) + np.diag(rng.standard_normal(n - 1), -1)
        return (A, None) if return_real else A
    if t not in ("rotated_diag", "complex_symmetric"):
        raise ValueError(f"unknown matrix type {t!r}")
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    x = rng.standard_normal(r)
    y = rng.standard_normal(n - r) + 1j * rng.standard_normal(n - r)
    if t == "rotated_diag":
        y = y / np.sqrt(2.0)
    Q = _orthogonal(n, rng)
    A = Q.T @ (np.concatenate([x, y])[:, None] * Q)
    return (A, np.sort(x)) if return_real else A


def real_targets(z) -> np.ndarray:
    z = np.asarray(z)
    return np.sort(z[np.abs(z.imag) <= REAL_TOL * np.maximum(1.0, np.abs(z))].real)


@dataclass
class SuiteConfig:
    family: str
    algo: str = "sign"
    grid: list = field(default_factory=list)
    trials: int = 1
    seed: int = 0
    sign: SignFlowConfig = field(default_factory=SignFlowConfig)
    modular: ModularConfig = field(default_factory=ModularConfig)
    polynomial: Polynomial | None = None
    use_hint: bool = True

    def __post_init__(self):
        if self.family not in POLY_FAMILIES + MATRIX_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.algo not in ALGOS:
            raise ValueError(f"unknown algorithm {self.algo!r}")
        if self.family in MATRIX_FAMILIES and self.algo not in ("sign", "oracle"):
            raise ValueError("matrix families run with the sign flow only")
        if self.family == "fixed" and self.polynomial is None:
            raise ValueError("family 'fixed' needs a polynomial")
        if self.trials < 1:
            raise ValueError("trials must be positive")


def _instance(cfg: SuiteConfig, n: int, r: int, trial: int):
    rng = trial_rng(cfg.seed, n, r, trial)
    fam = cfg.family
    if fam in MATRIX_FAMILIES:
        A, x = gen_matrix(fam, n, r, rng, return_real=True)
        return A, (x if x is not None else real_targets(np.linalg.eigvals(A)))
    if fam == "fixed":
        p = cfg.polynomial
    elif fam == "mignotte":
        p = gen_mignotte(n)
    else:
        p = gen_type(fam, n, r, rng)
    return p, real_targets(oracle_roots(p))


def _solve(cfg: SuiteConfig, obj, hint: int | None):
    if cfg.family in MATRIX_FAMILIES:
        if cfg.algo == "oracle":
            return real_targets(np.linalg.eigvals(obj)), 0
        rep = real_eigs_sign(obj, hint, cfg.sign)
        return rep.roots, rep.iterations
    if cfg.algo == "oracle":
        return real_targets(oracle_roots(obj)), 0
    if cfg.algo == "sign":
        rep = real_roots_sign(obj, hint, cfg.sign)
    elif cfg.algo == "stabilized":
        rep = real_roots_stabilized(obj, cfg.sign, hint)
    elif cfg.algo == "hybrid":
        rep = real_roots_hybrid(obj, cfg.sign, hint)
    else:
        rep = real_roots_modular(obj, hint, cfg.modular)
    return rep.roots, rep.iterations


def run_trial(cfg: SuiteConfig, n: int, r: int, trial: int) -> dict:
    try:
        obj, targets = _instance(cfg, n, r, trial)
    except OracleDisagreement as exc:
        # no trustworthy reference: the instance is rejected and counted with the failures
        return {"n": n, "r": r, "trial": trial, "ok": False, "error_type": "OracleDisagreement", "message": str(exc)}
    hint = int(targets.size) if cfg.use_hint else None
    out = {"n": n, "r": r, "trial": trial, "targets": int(targets.size)}
    try:
        roots, its = _solve(cfg, obj, hint)
    except (RealRootsError, np.linalg.LinAlgError) as exc:
        out.update(ok=False, error_type=type(exc).__name__, message=str(exc))
        return out
    err = match_distance(targets, roots) if targets.size or roots.size else None
    if err is not None and not np.isfinite(err):
        out.update(ok=False, error_type="RootCountMismatch", found=int(roots.size))
        return out
    out.update(ok=True, iterations=int(its), error=err, found=int(roots.size))
    return out


def _stats(vals) -> tuple[float, float]:
    if not vals:
        return np.nan, np.nan
    a = np.asarray(vals, dtype=float)
    return float(a.mean()), float(a.std())


def run_suite(cfg: SuiteConfig) -> list[BenchRecord]:
    """Run ``trials`` instances per (n, r); failures are counted and excluded from the statistics."""
    grid = cfg.grid
    if cfg.family == "fixed" and not grid:
        grid = [(cfg.polynomial.degree, 0)]
    records = []
    for n, r in sorted(grid):
        detail = [run_trial(cfg, n, r, k) for k in range(cfg.trials)]
        good = [d for d in detail if d["ok"]]
        im, isd = _stats([d["iterations"] for d in good])
        em, esd = _stats([d["error"] for d in good if d["error"] is not None])
        records.append(BenchRecord(cfg.family, n, r, cfg.trials, len(detail) - len(good), im, isd, em, esd, cfg.seed, detail))
    return records


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow(rec.row())
    return buf.getvalue()


def to_json(records) -> str:
    def clean(x):
        if isinstance(x, float) and not np.isfinite(x):
            return None
        return x

    out = []
    for rec in records:
        d = {k: clean(v) for k, v in asdict(rec).items()}
        out.append(d)
    return json.dumps(out, indent=2, sort_keys=True)


# Named suites mirroring the experiment tables.  Each entry builds a SuiteConfig.
def _grid(ns, rs):
    return [(n, r) for n in ns for r in rs]


def suite(name: str, trials: int | None = None, seed: int = 0, n: list | None = None) -> SuiteConfig:
    """Named experiment configurations; ``trials`` and ``n`` override the defaults."""
    table = {
        "mignotte": dict(family="mignotte", algo="sign", grid=_grid([32, 64, 128, 256], [3]), trials=1,
                         sign=SignFlowConfig(scale="determinantal")),
        "random_product": dict(family="random_product", algo="sign", grid=_grid([50, 100, 150, 200, 250], [8, 12]),
                               trials=100),
        "rotated_diag": dict(family="rotated_diag", algo="sign", grid=_grid([50, 100, 150, 200, 250], [8, 12]),
                             trials=100),
        "complex_symmetric": dict(family="complex_symmetric", algo="sign",
                                  grid=_grid([50, 100, 150, 200, 250], [8, 12]), trials=100),
        "tridiag": dict(family="tridiag", algo="sign", grid=_grid([64, 128, 256], [0]), trials=100),
        "stabilized_I": dict(family="I", algo="stabilized", grid=_grid([64, 128, 256], [8, 12, 16]), trials=1,
                             sign=SignFlowConfig(variant="stabilized")),
        "stabilized_II": dict(family="II", algo="stabilized", grid=_grid([64, 128, 256], [8, 12, 16]), trials=1,
                              sign=SignFlowConfig(variant="stabilized")),
        "stabilized_III": dict(family="III", algo="stabilized", grid=_grid([64, 128, 256], [8, 12, 16]), trials=1,
                               sign=SignFlowConfig(variant="stabilized")),
        "stabilized_V": dict(family="V", algo="stabilized", grid=_grid([128, 256], [8, 12, 16]), trials=50,
                             sign=SignFlowConfig(variant="stabilized")),
        "hybrid_II": dict(family="II", algo="hybrid", grid=_grid([64, 128, 256], [8, 12, 16]), trials=1,
                          sign=SignFlowConfig(variant="hybrid")),
        "hybrid_IV": dict(family="IV", algo="hybrid", grid=_grid([64, 128, 256], [60, 80, 100]), trials=1,
                          sign=SignFlowConfig(variant="hybrid")),
        "modular_I": dict(family="I", algo="modular", grid=_grid([64, 128], [8, 12, 16]), trials=1),
        "modular_II": dict(family="II", algo="modular", grid=_grid([64, 128], [8, 12, 16]), trials=1),
    }
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(sorted(table))}")
    kw = dict(table[name])
    if trials is not None:
        kw["trials"] = trials
    if n is not None:
        rs = sorted({r for _, r in kw["grid"]})
        kw["grid"] = _grid(n, rs)
    return SuiteConfig(seed=seed, **kw)


SUITES = ("mignotte", "random_product", "rotated_diag", "complex_symmetric", "tridiag", "stabilized_I",
          "stabilized_II", "stabilized_III", "stabilized_V", "hybrid_II", "hybrid_IV", "modular_I", "modular_II")
