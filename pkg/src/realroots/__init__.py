"""Real roots of polynomials and real eigenvalues of matrices by modified matrix sign iterations."""

from .bench import BenchRecord, gen_matrix, gen_mignotte, gen_type, run_suite
from .errors import AlgorithmFailure, RealRootsError
from .frobenius import FrobeniusElement, companion, frob_inv, frob_mul
from .geometry import DiscQuery, count_roots_disc, count_with_squaring, proximity, r1_bounds, root_radii
from .modular import AgcdResult, ModularConfig, agcd, real_roots_modular
from .poly import Polynomial, read_polynomial, write_polynomial
from .refine import aberth, match_distance, newton, oracle_roots, wdk
from .sign_iter import (
    SignFlowConfig,
    SignFlowReport,
    real_eigs_sign,
    real_roots_hybrid,
    real_roots_sign,
    real_roots_stabilized,
    solve,
)
from .subspace import SubspaceResult, dominant_eigenspace, rayleigh_reduce

__all__ = [
    "AgcdResult", "AlgorithmFailure", "BenchRecord", "DiscQuery", "FrobeniusElement", "ModularConfig",
    "Polynomial", "RealRootsError", "SignFlowConfig", "SignFlowReport", "SubspaceResult", "aberth", "agcd",
    "companion", "count_roots_disc", "count_with_squaring", "dominant_eigenspace", "frob_inv", "frob_mul",
    "gen_matrix", "gen_mignotte", "gen_type", "match_distance", "newton", "oracle_roots", "proximity",
    "r1_bounds", "rayleigh_reduce", "read_polynomial", "real_eigs_sign", "real_roots_hybrid",
    "real_roots_modular", "real_roots_sign", "real_roots_stabilized", "root_radii", "run_suite", "solve",
    "wdk", "write_polynomial",
]
