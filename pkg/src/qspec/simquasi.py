"""Intertwining, similarity classification and re-metrized symmetry.

The central relation is B T = T A for a bounded T.  At finite dimension
every invertible T has a bounded inverse, so the bounded-vs-unbounded
inverse dichotomy is replaced by a declared condition-number proxy:
tau = ||T|| / s_min(T).  A triple classifies as ``similar`` when the
intertwining holds both ways and tau stays below a threshold, and as
``quasi_similar`` when only the forward intertwining (or an ill
conditioned T) survives.  The thresholds are always reported so callers
can re-threshold; nothing is hidden behind the labels.

Also here: the residual of the weighted symmetry relation G A = A* G,
its sampled sesquilinear-form variant, construction of operators that are
Hermitian after re-metrization, and the transform to the physically
equivalent Hermitian operator h = G^{1/2} A G^{-1/2}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, EmptySampleSet, NotHermitian
from .metric import MetricOperator

DEFAULT_INTERTWINE_TOL = 1e-8
DEFAULT_COND_THRESHOLD = 1e6

SIMILAR = "similar"
QUASI_SIMILAR = "quasi_similar"
NOT_INTERTWINING = "not_intertwining"


@dataclass(frozen=True)
class IntertwinerReport:
    """Classification of a triple (A, B, T) with all numbers exposed."""

    residual: float
    T_norm: float
    T_min_singular: float
    tau: float
    classification: str
    reverse_residual: float
    tol: float
    cond_threshold: float

    def as_dict(self) -> dict:
        return {
            "residual": self.residual,
            "T_norm": self.T_norm,
            "T_min_singular": self.T_min_singular,
            "tau": self.tau,
            "classification": self.classification,
            "reverse_residual": self.reverse_residual,
            "tol": self.tol,
            "cond_threshold": self.cond_threshold,
        }


def _triple(A, B, T):
    a = linalg.as_matrix(A)
    b = linalg.as_matrix(B)
    t = linalg.as_matrix(T)
    if not (a.shape == b.shape == t.shape):
        raise DimensionMismatch(
            f"A, B, T must share one dimension, got {a.shape}, {b.shape}, {t.shape}"
        )
    return a, b, t


def intertwine_residual(A, B, T) -> float:
    """||B T - T A|| / (||T|| (||A|| + ||B||)); zero iff T intertwines exactly."""
    a, b, t = _triple(A, B, T)
    denom = np.linalg.norm(t, 2) * (np.linalg.norm(a, 2) + np.linalg.norm(b, 2))
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(b @ t - t @ a, 2)) / float(denom)


def sample_intertwine_residual(A, B, T, samples, skip_boundary: int = 0) -> float:
    """Worst relative residual ||(B T - T A) f|| / ||f|| over sample vectors.

    ``skip_boundary`` drops that many entries at each end of the residual
    vector before taking the norm; grid discretizations use it to measure
    the interior residual, excluding rows that only reflect the domain
    truncation.
    """
    a, b, t = _triple(A, B, T)
    samples = list(samples)
    if not samples:
        raise EmptySampleSet("sample_intertwine_residual needs at least one sample vector")
    R = b @ t - t @ a
    worst = 0.0
    for f in samples:
        v = linalg.as_vector(f, a.shape[0])
        r = R @ v
        if skip_boundary:
            r = r[skip_boundary:-skip_boundary]
        worst = max(worst, float(np.linalg.norm(r) / np.linalg.norm(v)))
    return worst


def classify(
    A,
    B,
    T,
    tol: float = DEFAULT_INTERTWINE_TOL,
    cond_threshold: float = DEFAULT_COND_THRESHOLD,
) -> IntertwinerReport:
    """Classify (A, B, T) as similar / quasi_similar / not_intertwining.

    not_intertwining when the forward residual exceeds ``tol``; otherwise
    similar when tau <= ``cond_threshold`` and T^{-1} intertwines the pair
    back within ``tol`` (checked directly, not inferred), else
    quasi_similar.
    """
    if tol <= 0 or cond_threshold <= 0:
        raise ValueError("tol and cond_threshold must be positive")
    a, b, t = _triple(A, B, T)
    residual = intertwine_residual(a, b, t)
    T_norm = float(np.linalg.norm(t, 2))
    T_min = linalg.smallest_singular(t)
    tau = T_norm / T_min if T_min > 0.0 else np.inf

    reverse = np.inf
    if T_min > 0.0:
        tinv = np.linalg.inv(t)
        denom = np.linalg.norm(tinv, 2) * (np.linalg.norm(a, 2) + np.linalg.norm(b, 2))
        if denom > 0.0:
            reverse = float(np.linalg.norm(a @ tinv - tinv @ b, 2)) / float(denom)
        else:
            reverse = 0.0

    if residual > tol:
        label = NOT_INTERTWINING
    elif tau <= cond_threshold and reverse <= tol:
        label = SIMILAR
    else:
        label = QUASI_SIMILAR
    return IntertwinerReport(
        residual=residual,
        T_norm=T_norm,
        T_min_singular=T_min,
        tau=float(tau),
        classification=label,
        reverse_residual=float(reverse),
        tol=tol,
        cond_threshold=cond_threshold,
    )


def _check_dim(A, G: MetricOperator) -> np.ndarray:
    a = linalg.as_matrix(A)
    if a.shape[0] != G.dim:
        raise DimensionMismatch(f"operator dimension {a.shape[0]} != metric dimension {G.dim}")
    return a


def similarity_transform(A, G: MetricOperator) -> np.ndarray:
    """G^{1/2} A G^{-1/2}; Hermitian exactly when A is Hermitian in the
    G-weighted inner product (check with ``linalg.hermiticity_residual``)."""
    a = _check_dim(A, G)
    return G.power(0.5) @ a @ G.power(-0.5)


def dieudonne_residual(A, G: MetricOperator) -> float:
    """||G A - A* G|| / (||G|| ||A||): defect of the weighted symmetry relation."""
    a = _check_dim(A, G)
    denom = np.linalg.norm(G.matrix, 2) * np.linalg.norm(a, 2)
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(G.matrix @ a - a.conj().T @ G.matrix, 2) / denom)


def form_residual(A, G: MetricOperator, samples) -> float:
    """Sesquilinear-form defect max |<A xi, G eta> - <G xi, A eta>|,
    normalized by ||A|| ||G|| ||xi|| ||eta||, over all sample pairs.

    Agrees with ``dieudonne_residual`` up to norm-equivalence factors; on
    restricted sample families it measures the defect only on their span.
    """
    a = _check_dim(A, G)
    vecs = [linalg.as_vector(s, G.dim) for s in samples]
    if not vecs:
        raise EmptySampleSet("form_residual needs at least one sample vector")
    nrm = np.linalg.norm(a, 2) * np.linalg.norm(G.matrix, 2)
    if nrm == 0.0:
        return 0.0
    Av = [a @ v for v in vecs]
    Gv = [G.matrix @ v for v in vecs]
    norms = [np.linalg.norm(v) for v in vecs]
    worst = 0.0
    for i in range(len(vecs)):
        for j in range(len(vecs)):
            gap = abs(linalg.inner(Av[i], Gv[j]) - linalg.inner(Gv[i], Av[j]))
            worst = max(worst, gap / (nrm * norms[i] * norms[j]))
    return float(worst)


def make_quasi_self_adjoint(K, G: MetricOperator) -> np.ndarray:
    """A = G^{-1/2} K G^{1/2} for Hermitian K.

    By construction A has the (real) spectrum of K, satisfies the weighted
    symmetry relation G A = A* G, and ``similarity_transform(A, G)``
    recovers K, all up to cond(G)-scaled roundoff.
    """
    k = _check_dim(K, G)
    if linalg.hermiticity_residual(k) > linalg.HERMITICITY_RTOL:
        raise NotHermitian("make_quasi_self_adjoint needs a Hermitian seed")
    return G.power(-0.5) @ k @ G.power(0.5)


@dataclass(frozen=True)
class PhysicalSystem:
    """Result of the physical-equivalence transform h = G^{1/2} A G^{-1/2}."""

    hamiltonian: np.ndarray
    hermiticity_residual: float
    tol: float
    physical: bool

    @property
    def status(self) -> str:
        if self.physical:
            return "physical system constructed"
        return "transform is not Hermitian at tolerance (truncation or wrong metric)"


def physical_hamiltonian(H, G: MetricOperator, tol: float = 1e-8) -> PhysicalSystem:
    """Transform H to the G-weighted frame and report how Hermitian it is.

    Eigenvalues are preserved exactly (conjugation); when the residual is
    below ``tol`` the pair (G-norm, h) is flagged as a constructed
    physical system.
    """
    h = similarity_transform(H, G)
    res = linalg.hermiticity_residual(h)
    return PhysicalSystem(hamiltonian=h, hermiticity_residual=res, tol=tol, physical=res <= tol)
