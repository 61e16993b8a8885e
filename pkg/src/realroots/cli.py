"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 algorithm failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .errors import RealRootsError
from .geometry import DiscQuery, count_roots_disc, count_with_squaring, root_radii
from .modular import ModularConfig, real_roots_modular
from .poly import Polynomial, polynomial_to_json, read_polynomial
from .refine import oracle_roots, scaled_residuals
from .sign_iter import SignFlowConfig, real_roots_hybrid, real_roots_sign, real_roots_stabilized

EXIT_OK, EXIT_USAGE, EXIT_FAILURE, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_float(s):
    v = float(s)
    if not np.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s!r}")
    return v


def _nonneg_int(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s!r}")
    return v


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}")
    return v


def _complex_pair(s):
    parts = s.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected 're,im', got {s!r}")
    z = complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0)
    if not np.isfinite(z):
        raise argparse.ArgumentTypeError("center must be finite")
    return z


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realroots", description="Real roots by modified matrix sign iterations.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("solve", help="approximate the real roots of a polynomial")
    s.add_argument("--input", required=True, help="polynomial file (text or JSON)")
    s.add_argument("--algo", choices=bench.ALGOS, default="stabilized")
    s.add_argument("--r", type=_nonneg_int, default=None, help="expected number of real roots")
    s.add_argument("--alpha", type=_positive_float, default=1e-4)
    s.add_argument("--tol", type=_positive_float, default=None, help="rank threshold (agcd tolerance for modular)")
    s.add_argument("--max-iter", type=_positive_int, default=None)
    s.add_argument("--check-period", type=_positive_int, default=5)
    s.add_argument("--scale", choices=("none", "determinantal"), default="none")
    s.add_argument("--refine", type=_nonneg_int, default=1, help="0 disables Newton polishing")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", choices=("json", "csv", "text"), default="json")
    s.add_argument("--verbose", action="store_true")

    b = sub.add_parser("bench", help="run a named experiment suite")
    b.add_argument("--suite", choices=bench.SUITES, required=True)
    b.add_argument("--trials", type=_positive_int, default=None)
    b.add_argument("--n", type=_positive_int, nargs="+", default=None, help="override the degrees of the grid")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--output", choices=("csv", "json"), default="csv")
    b.add_argument("--out", default=None, help="write the table here instead of stdout")
    b.add_argument("--verbose", action="store_true", help="also emit per-trial JSON detail")

    c = sub.add_parser("count", help="count roots in a disc")
    c.add_argument("--input", required=True)
    c.add_argument("--center", type=_complex_pair, default=0j)
    c.add_argument("--radius", type=_positive_float, default=1.0)
    c.add_argument("--squarings", type=_nonneg_int, default=0)

    r = sub.add_parser("radii", help="root-radius estimates")
    r.add_argument("--input", required=True)
    r.add_argument("--refine", type=_nonneg_int, default=0, help="number of root squarings")
    r.add_argument("--output", choices=("json", "text"), default="text")

    v = sub.add_parser("verify", help="recompute the residuals stored by `solve --output json`")
    v.add_argument("--input", required=True)
    v.add_argument("--tol", type=_positive_float, default=1e-12)
    return parser


def _load(path) -> Polynomial:
    try:
        p = read_polynomial(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if p.degree < 1:
        raise InputError(f"{path}: need a polynomial of degree at least 1")
    if not np.all(np.isfinite(p.coeffs)):
        raise InputError(f"{path}: coefficients must be finite")
    return p


def _solve(args) -> int:
    p = _load(args.input)
    if args.algo == "oracle":
        z = oracle_roots(p)
        roots = bench.real_targets(z)
        info = dict(iterations=0, status="ok", r_detected=int(roots.size))
    elif args.algo == "modular":
        mcfg = ModularConfig(refine=bool(args.refine))
        if args.tol is not None:
            mcfg.tol = args.tol
        if args.max_iter is not None:
            mcfg.max_iter = args.max_iter
        rep = real_roots_modular(p, args.r, mcfg)
        roots = rep.roots
        info = dict(iterations=rep.iterations, status=rep.status, r_detected=rep.r_detected)
    else:
        if args.algo != "sign" and args.scale != "none":
            raise UsageError("--scale applies to --algo sign only")
        variant = {"sign": "basic"}.get(args.algo, args.algo)
        kw = dict(alpha=args.alpha, check_period=args.check_period, scale=args.scale, variant=variant,
                  seed=args.seed, refine=bool(args.refine))
        if args.tol is not None:
            kw["eps_rank"] = args.tol
        if args.max_iter is not None:
            kw["max_iter"] = args.max_iter
        cfg = SignFlowConfig(**kw)
        if args.algo == "sign":
            rep = real_roots_sign(p, args.r, cfg)
        elif args.algo == "stabilized":
            rep = real_roots_stabilized(p, cfg, args.r)
        else:
            rep = real_roots_hybrid(p, cfg, args.r)
        roots = rep.roots
        info = dict(iterations=rep.iterations, status=rep.status, r_detected=rep.r_detected)
    roots = np.asarray(roots, dtype=float)
    res = scaled_residuals(p, roots) if roots.size else np.zeros(0)
    if args.output == "json":
        out = dict(algo=args.algo, polynomial=polynomial_to_json(p), roots=roots.tolist(),
                   residuals=res.tolist(), **info)
        print(json.dumps(out, indent=2))
    elif args.output == "csv":
        print("root,residual")
        for x, e in zip(roots, res):
            print(f"{float(x)!r},{float(e)!r}")
    else:
        for x, e in zip(roots, res):
            print(f"{x:.16g}  {e:.3e}")
    if args.verbose:
        print(f"iterations={info['iterations']} status={info['status']}", file=sys.stderr)
    return EXIT_OK


def _bench(args) -> int:
    cfg = bench.suite(args.suite, trials=args.trials, seed=args.seed, n=args.n)
    records = bench.run_suite(cfg)
    text = bench.to_json(records) if args.output == "json" else bench.to_csv(records)
    detail = bench.to_json(records) if args.verbose else None
    if args.out:
        try:
            out = Path(args.out)
            out.write_text(text)
            if detail is not None:
                out.with_suffix(".json").write_text(detail)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
        if detail is not None and args.output != "json":
            sys.stdout.write(detail + "\n")
    return EXIT_OK


def _count(args) -> int:
    p = _load(args.input)
    q = DiscQuery(args.center, args.radius, args.squarings)
    k = count_with_squaring(p, q) if args.squarings else count_roots_disc(p, q)
    print(k)
    return EXIT_OK


def _radii(args) -> int:
    p = _load(args.input)
    rad = root_radii(p, args.refine)
    if args.output == "json":
        print(json.dumps({"refine": args.refine, "radii": rad.tolist()}))
    else:
        for x in rad:
            print(f"{x:.16g}")
    return EXIT_OK


def _verify(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text())
        p = Polynomial(np.array([complex(*c) for c in data["polynomial"]["coeffs"]]))
        roots = np.asarray(data["roots"], dtype=float)
        stored = np.asarray(data["residuals"], dtype=float)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from exc
    fresh = scaled_residuals(p, roots) if roots.size else np.zeros(0)
    if fresh.shape != stored.shape:
        print("residual count does not match the roots", file=sys.stderr)
        return EXIT_FAILURE
    diff = float(np.max(np.abs(fresh - stored))) if fresh.size else 0.0
    print(f"max residual difference {diff:.3e}")
    return EXIT_OK if diff <= args.tol else EXIT_FAILURE


COMMANDS = {"solve": _solve, "bench": _bench, "count": _count, "radii": _radii, "verify": _verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO
    except (RealRootsError, np.linalg.LinAlgError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (ValueError, ArithmeticError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_FAILURE
