"""Exception types shared across the toolkit.

Dedicated classes (rather than bare ``ValueError``) so callers can tell
toolkit-level failures apart from built-in errors.
"""


class QspecError(Exception):
    """Base class for all toolkit errors."""


class NotHermitian(QspecError):
    """Raised when an operator expected to be Hermitian is not."""


class NotPositive(QspecError):
    """Raised when a candidate metric has an eigenvalue at or below zero.

    Carries ``min_eigenvalue`` so the caller can see how far from positive
    the matrix is.
    """

    def __init__(self, msg, min_eigenvalue=None):
        super().__init__(msg)
        self.min_eigenvalue = min_eigenvalue


class ConvergenceFailure(QspecError):
    """Raised when an eigenvalue or singular-value factorization fails."""


class DomainError(QspecError):
    """Raised when a scalar function or matrix entry is outside its domain
    (non-finite values, negative powers at zero, ...)."""


class DimensionMismatch(QspecError):
    """Raised when operator or vector dimensions are incompatible."""


class ZeroVector(QspecError):
    """Raised when a rank-one factor vector is identically zero."""


class BasisMismatch(QspecError):
    """Raised when an operator builder gets a basis it does not support."""


class UnknownExample(QspecError):
    """Raised for example-pair names outside the registry."""


class EmptySampleSet(QspecError):
    """Raised when a sampled residual is called with no sample vectors."""


class GridMismatch(QspecError):
    """Raised when pseudospectrum grids are not congruent, or a grid does
    not cover the region a check needs."""


class NotSimilar(QspecError):
    """Raised when a check requiring a similar pair gets one that is not."""


class NotIntertwining(QspecError):
    """Raised when a check requiring an intertwining triple gets one whose
    residual is above tolerance."""


class NotInPseudospectrum(QspecError):
    """Raised when a witness is requested at a point outside the level set."""


class ConfigError(QspecError):
    """Raised for malformed or out-of-range run configurations."""
