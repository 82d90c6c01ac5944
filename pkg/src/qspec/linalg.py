"""Dense complex linear algebra facade.

Eigendecompositions, singular values and Hermitian matrix functions that
every other module consumes.  Matrices are plain ``numpy.ndarray`` values;
``as_matrix`` validates squareness and finiteness once so downstream code
can assume both.  All operations are pure functions of immutable inputs.

Inner products are linear in the *first* entry throughout the package:
``inner(a, b) = sum_i a_i * conj(b_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, DimensionMismatch, DomainError, NotHermitian

# Relative Hermiticity drift tolerated before a matrix is rejected.
HERMITICITY_RTOL = 1e-10


def as_matrix(M) -> np.ndarray:
    """Coerce to a square, finite, complex matrix.

    Accepts ndarrays, nested sequences, or any object with a ``matrix``
    attribute (e.g. ``discretize.LinearOperator``).
    """
    if hasattr(M, "matrix"):
        M = M.matrix
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A.view(float))):
        raise DomainError("matrix has non-finite entries")
    return A


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite complex vector, optionally of a fixed dimension."""
    v = np.asarray(x, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(v.view(float))):
        raise DomainError("vector has non-finite entries")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"expected a vector of length {dim}, got {v.shape[0]}")
    return v


def inner(a, b) -> complex:
    """Inner product, linear in the first entry: sum_i a_i conj(b_i)."""
    return complex(np.vdot(np.asarray(b), np.asarray(a)))


def operator_norm(M) -> float:
    """Operator 2-norm (largest singular value)."""
    return float(np.linalg.norm(as_matrix(M), 2))


def hermiticity_residual(M) -> float:
    """Relative Hermiticity defect ||M - M*|| / ||M|| (0 for the zero matrix)."""
    A = as_matrix(M)
    nrm = float(np.linalg.norm(A, 2))
    if nrm == 0.0:
        return 0.0
    return float(np.linalg.norm(A - A.conj().T, 2)) / nrm


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    orthonormal eigenvectors as columns, so ``V @ diag(w) @ V.conj().T``
    reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def hermitian_eig(M) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (M + M*)/2 before factorization; drift
    beyond ``HERMITICITY_RTOL`` raises ``NotHermitian``.
    """
    A = as_matrix(M)
    if hermiticity_residual(A) > HERMITICITY_RTOL:
        raise NotHermitian(
            f"Hermiticity residual {hermiticity_residual(A):.3e} exceeds {HERMITICITY_RTOL:.0e}"
        )
    A = (A + A.conj().T) / 2.0
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"Hermitian eigensolver failed: {exc}") from exc
    return HermitianEig(_freeze(w), _freeze(V))


def general_eig(M) -> np.ndarray:
    """All eigenvalues of a general matrix, with algebraic multiplicity.

    Returned sorted lexicographically by (real, imaginary) part so output
    is deterministic; no clustering is applied.
    """
    A = as_matrix(M)
    try:
        ev = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    return _freeze(np.sort_complex(ev))


def singular_values(M) -> np.ndarray:
    """All singular values, descending."""
    A = as_matrix(M)
    try:
        return _freeze(np.linalg.svd(A, compute_uv=False))
    except np.linalg.LinAlgError:
        # gesdd occasionally fails where the slower gesvd succeeds
        try:
            return _freeze(scipy.linalg.svd(A, compute_uv=False, lapack_driver="gesvd"))
        except Exception as exc:
            raise ConvergenceFailure(f"SVD failed: {exc}") from exc


def smallest_singular(M) -> float:
    """Smallest singular value; equals 1/||M^{-1}|| when M is invertible.

    Full SVD at every size: the grid engine batches calls, so the dense
    path stays fast enough at the dimensions this package targets.
    """
    return float(singular_values(M)[-1])


def matrix_function_hermitian(G, f: Callable) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its
    eigendecomposition: V f(Lambda) V*.

    ``f`` may be vectorized or scalar-only, and must be finite on the
    spectrum of G.  For real-valued f the result is re-symmetrized so it
    is exactly Hermitian; a positive f on the spectrum therefore yields a
    valid metric matrix.  Complex-valued f is allowed (the result is then
    not Hermitian in general).
    """
    eig = hermitian_eig(G)
    vals = _apply_scalar_function(f, eig.eigenvalues)
    V = eig.eigenvectors
    out = (V * vals) @ V.conj().T
    if not np.iscomplexobj(vals) or np.all(vals.imag == 0.0):
        out = (out + out.conj().T) / 2.0
    return out


def _apply_scalar_function(f: Callable, w: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(f(w))
            if vals.shape != w.shape:
                raise TypeError
        except (TypeError, ValueError):
            try:
                vals = np.asarray([f(x) for x in w])
            except (ArithmeticError, ValueError) as exc:
                raise DomainError(f"function raised on an eigenvalue: {exc}") from exc
    flat = np.atleast_1d(vals).astype(complex)
    if not np.all(np.isfinite(flat.view(float))):
        bad = w[~np.isfinite(flat.view(float).reshape(-1, 2)).any(axis=1)]
        raise DomainError(f"function is not finite on the spectrum (at {bad[:3]})")
    return vals
