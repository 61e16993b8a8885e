"""Exception types raised across the package.

Every error derives from :class:`RealRootsError` so callers can catch the
whole family at once; the CLI maps them onto exit codes.
"""


class RealRootsError(Exception):
    """Base class for all package errors."""


class AlgorithmFailure(RealRootsError):
    """An algorithm ran but could not produce a trustworthy answer."""


# poly_core
class ZeroScale(RealRootsError, ValueError):
    pass


class Pole(RealRootsError, ZeroDivisionError):
    pass


class DegreeDrop(RealRootsError, ValueError):
    pass


class DivisionByZeroPoly(RealRootsError, ZeroDivisionError):
    pass


# dense_linalg
class RankDeficient(RealRootsError, ValueError):
    pass


class SingularMatrix(RealRootsError, ArithmeticError):
    pass


class IllConditioned(RealRootsError, ArithmeticError):
    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class NoConvergence(AlgorithmFailure):
    pass


# frobenius
class DimensionMismatch(RealRootsError, ValueError):
    pass


class ModulusMismatch(RealRootsError, ValueError):
    pass


class ZeroLeadingCoefficient(RealRootsError, ValueError):
    pass


class NotInvertible(RealRootsError, ArithmeticError):
    pass


# subspace
class Failure(AlgorithmFailure):
    """Randomized subspace approximation failed on every attempt."""


class NoStableRank(AlgorithmFailure):
    pass


class NotUnitary(RealRootsError, ValueError):
    pass


# sign_iter
class ZeroInput(RealRootsError, ZeroDivisionError):
    pass


class RealInput(RealRootsError, ValueError):
    pass


class ZeroConstantTerm(RealRootsError, ValueError):
    pass


class ScalingFailed(AlgorithmFailure):
    pass


class MaxIterExceeded(AlgorithmFailure):
    pass


class DivergenceDetected(AlgorithmFailure):
    pass


# plane_geometry
class ZeroOnCircle(AlgorithmFailure):
    pass


class PrecisionLoss(AlgorithmFailure):
    pass


class RootAtPoint(RealRootsError, ValueError):
    pass


# refine
class DerivativeVanished(AlgorithmFailure):
    pass


class OracleDisagreement(AlgorithmFailure):
    pass
