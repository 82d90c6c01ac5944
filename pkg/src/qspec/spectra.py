"""Spectra, numerical ranges and pseudospectrum grids.

The pseudospectrum of A at level eps is the set of z where the resolvent
norm exceeds 1/eps, evaluated here as s_min(A - z I) < eps on a
rectangular grid.  Level sets, the tubular-neighborhood (triviality)
detector, the two-sided inclusion between similar operators, the
spectrum/numerical-range sandwich and the pseudomode witness transport
all operate on such grids.

Grid evaluation is data-parallel over z-points: every point is an
independent dense SVD, so worker count never changes the output values.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from threadpoolctl import threadpool_limits

from . import linalg
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    GridMismatch,
    NotInPseudospectrum,
    NotIntertwining,
    NotSimilar,
    ZeroVector,
)
from .report import VerificationReport, matrix_digest
from .simquasi import SIMILAR, classify, intertwine_residual

# Target bytes per batched SVD chunk; keeps memory bounded while the
# LAPACK loop stays long enough to amortize call overhead.
_CHUNK_BYTES = 48 * 2**20


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues clustered into multiplicities at a declared radius."""

    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    cluster_tol: float

    def as_dict(self) -> dict:
        return {
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "multiplicities": [int(m) for m in self.multiplicities],
            "cluster_tol": float(self.cluster_tol),
        }


def spectrum(A, cluster_tol: float | None = None) -> Spectrum:
    """Eigenvalues with multiplicities, clustered by single linkage.

    Default radius is 1e-6 * max(1, ||A||); exact multiplicities are a
    statement about exact arithmetic, so the radius is always declared.
    """
    M = linalg.as_matrix(A)
    if cluster_tol is None:
        cluster_tol = 1e-6 * max(1.0, float(np.linalg.norm(M, 2)))
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    ev = linalg.general_eig(M)
    # single linkage: values within cluster_tol of any member share a cluster
    clusters: list[list[complex]] = []
    for z in ev:
        hits = [c for c in clusters if any(abs(z - w) <= cluster_tol for w in c)]
        for c in hits:
            clusters.remove(c)
        clusters.append([z] + [w for c in hits for w in c])
    reps = [sum(c) / len(c) for c in clusters]
    order = sorted(range(len(reps)), key=lambda i: (reps[i].real, reps[i].imag))
    values = np.array([reps[i] for i in order], dtype=complex)
    counts = np.array([len(clusters[i]) for i in order], dtype=int)
    return Spectrum(values, counts, float(cluster_tol))


def distance_to_spectrum(z, spec: Spectrum) -> np.ndarray:
    """Pointwise distance from complex values z (any shape) to the spectrum."""
    zz = np.asarray(z, dtype=complex)
    return np.min(np.abs(zz[..., None] - spec.eigenvalues), axis=-1)


@dataclass(frozen=True)
class PseudospectrumGrid:
    """s_min(A - z I) sampled on a rectangular complex-plane grid.

    ``smin[i, j]`` belongs to z = re[i] + 1j*im[j]; the grid is row-major
    in (re, im).  Points where every SVD driver failed are recorded in
    ``failures`` and carry the sentinel value +inf (never NaN).
    """

    re: np.ndarray
    im: np.ndarray
    smin: np.ndarray
    eps_levels: tuple = ()
    failures: tuple = ()

    @property
    def re_range(self) -> tuple:
        return (float(self.re[0]), float(self.re[-1]))

    @property
    def im_range(self) -> tuple:
        return (float(self.im[0]), float(self.im[-1]))

    @property
    def resolution(self) -> tuple:
        return (len(self.re), len(self.im))

    @property
    def spacing(self) -> tuple:
        dre = float(self.re[1] - self.re[0]) if len(self.re) > 1 else 0.0
        dim = float(self.im[1] - self.im[0]) if len(self.im) > 1 else 0.0
        return (dre, dim)

    def zgrid(self) -> np.ndarray:
        return self.re[:, None] + 1j * self.im[None, :]

    def level_mask(self, eps: float) -> np.ndarray:
        """Membership mask for the eps level set (strict inequality)."""
        return self.smin < eps

    def level_cells(self, eps: float) -> list:
        ii, jj = np.nonzero(self.level_mask(eps))
        return [[int(i), int(j)] for i, j in zip(ii, jj)]


def _smin_block(M: np.ndarray, zs: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """s_min(M - z I) for a flat array of z, batched; per-point fallback."""
    n = M.shape[0]
    eye = np.eye(n)
    stack = M[None, :, :] - zs[:, None, None] * eye[None, :, :]
    try:
        vals = np.linalg.svd(stack, compute_uv=False)[:, -1]
        return vals, []
    except np.linalg.LinAlgError:
        pass
    out = np.empty(len(zs), dtype=float)
    failed: list[int] = []
    for k, z in enumerate(zs):
        try:
            out[k] = float(np.linalg.svd(M - z * eye, compute_uv=False)[-1])
        except np.linalg.LinAlgError:
            try:
                out[k] = float(
                    scipy.linalg.svd(M - z * eye, compute_uv=False, lapack_driver="gesvd")[-1]
                )
            except Exception:
                out[k] = np.inf
                failed.append(k)
    return out, failed


def _grid_rows_task(args) -> tuple[int, np.ndarray, list[tuple[int, int]]]:
    M, re_rows, im, i0 = args
    n_im = len(im)
    zs = (re_rows[:, None] + 1j * im[None, :]).reshape(-1)
    with threadpool_limits(limits=1):
        vals, failed = _smin_block(M, zs)
    block = vals.reshape(len(re_rows), n_im)
    failures = [(i0 + k // n_im, k % n_im) for k in failed]
    return i0, block, failures


def pseudospectrum(
    A,
    region,
    resolution,
    eps_levels=(),
    workers: int = 1,
) -> PseudospectrumGrid:
    """Evaluate s_min(A - z I) over a rectangular region.

    region: ((re_min, re_max), (im_min, im_max)); resolution: (n_re, n_im),
    each at least 2.  Output is independent of ``workers``.
    """
    M = linalg.as_matrix(A)
    (re_min, re_max), (im_min, im_max) = region
    n_re, n_im = int(resolution[0]), int(resolution[1])
    if n_re < 2 or n_im < 2:
        raise ValueError(f"resolution must be at least 2x2, got {resolution}")
    if not (re_min < re_max and im_min < im_max):
        raise ValueError(f"empty region {region}")
    eps_levels = tuple(float(e) for e in eps_levels)
    if any(e <= 0 for e in eps_levels):
        raise ValueError("eps levels must be positive")
    re = np.linspace(re_min, re_max, n_re)
    im = np.linspace(im_min, im_max, n_im)

    n = M.shape[0]
    rows_per_chunk = max(1, _CHUNK_BYTES // max(1, 16 * n * n * n_im))
    tasks = [
        (M, re[i0 : i0 + rows_per_chunk], im, i0)
        for i0 in range(0, n_re, rows_per_chunk)
    ]
    smin = np.empty((n_re, n_im), dtype=float)
    failures: list[tuple[int, int]] = []
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            results = list(pool.map(_grid_rows_task, tasks))
    else:
        results = [_grid_rows_task(t) for t in tasks]
    for i0, block, failed in results:
        smin[i0 : i0 + block.shape[0], :] = block
        failures.extend(failed)
    smin.setflags(write=False)
    return PseudospectrumGrid(re, im, smin, eps_levels, tuple(failures))


def congruent(g1: PseudospectrumGrid, g2: PseudospectrumGrid) -> bool:
    return (
        g1.resolution == g2.resolution
        and np.allclose(g1.re, g2.re, rtol=0, atol=1e-12)
        and np.allclose(g1.im, g2.im, rtol=0, atol=1e-12)
    )


def rank_one_resolvent_norm(a, b, u, v) -> float:
    """Exact operator norm of a I + b (u v*).

    The operator and its adjoint both leave span{u, v} invariant, so the
    singular values are |a| (on the complement) plus those of the 2x2
    compression; no dense SVD needed.
    """
    uu = linalg.as_vector(u)
    vv = linalg.as_vector(v, uu.shape[0])
    if np.linalg.norm(uu) == 0.0 or np.linalg.norm(vv) == 0.0:
        raise ZeroVector("rank-one factors must be nonzero")
    a = complex(a)
    b = complex(b)
    if b == 0:
        return abs(a)
    n = uu.shape[0]
    Q, R = np.linalg.qr(np.column_stack([uu, vv]))
    keep = np.abs(np.diag(R)) > 1e-14 * max(np.linalg.norm(uu), np.linalg.norm(vv))
    Q = Q[:, keep]
    r = Q.shape[1]
    alpha = Q.conj().T @ uu
    beta = Q.conj().T @ vv
    C = a * np.eye(r) + b * np.outer(alpha, beta.conj())
    svals = np.linalg.svd(C, compute_uv=False)
    top = float(svals[0])
    if n > r:
        top = max(top, abs(a))
    return top


@dataclass(frozen=True)
class NumericalRangeBoundary:
    """Support values and boundary points of the numerical range."""

    angles: np.ndarray
    support_values: np.ndarray
    boundary_points: np.ndarray

    def outer_distance(self, z) -> np.ndarray:
        """Distance from z to the intersection of supporting half-planes.

        A lower bound on the distance to the closed numerical range that
        converges to it as the number of angles grows; zero inside.
        """
        zz = np.asarray(z, dtype=complex)
        phase = np.exp(1j * self.angles)
        gaps = np.real(zz[..., None] * phase) - self.support_values
        return np.maximum(np.max(gaps, axis=-1), 0.0)


def numerical_range(A, n_angles: int = 360) -> NumericalRangeBoundary:
    """Boundary of the numerical range by the rotated-support method.

    For each angle the top eigenvector of the Hermitian part of
    e^{i theta} A gives a supporting line and a boundary point <A xi, xi>.
    """
    if n_angles < 4:
        raise ValueError("n_angles must be at least 4")
    M = linalg.as_matrix(A)
    angles = np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False)
    support = np.empty(n_angles)
    points = np.empty(n_angles, dtype=complex)
    for k, th in enumerate(angles):
        rotated = np.exp(1j * th) * M
        herm = (rotated + rotated.conj().T) / 2.0
        try:
            w, V = np.linalg.eigh(herm)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(f"support eigenproblem failed: {exc}") from exc
        xi = V[:, -1]
        support[k] = float(w[-1])
        points[k] = linalg.inner(M @ xi, xi)
    return NumericalRangeBoundary(angles, support, points)


def _dilate(mask: np.ndarray) -> np.ndarray:
    """One-cell (8-neighborhood) dilation without wraparound."""
    p = np.zeros((mask.shape[0] + 2, mask.shape[1] + 2), dtype=bool)
    p[1:-1, 1:-1] = mask
    out = np.zeros_like(mask)
    for dx in (0, 1, 2):
        for dy in (0, 1, 2):
            out |= p[dx : dx + mask.shape[0], dy : dy + mask.shape[1]]
    return out


def inclusion_check(
    A,
    B,
    T,
    eps: float,
    grid_A: PseudospectrumGrid,
    grid_B: PseudospectrumGrid,
    tol: float = 1e-8,
    cond_threshold: float = 1e6,
) -> VerificationReport:
    """Two-sided level-set inclusion for a similar pair.

    With tau = ||T|| / s_min(T), the eps/tau level set of B must sit inside
    the eps level set of A, which must sit inside the eps*tau level set of
    B.  Checked cellwise on congruent grids with one-cell slack (boundary
    cells are resolution limited).
    """
    if not congruent(grid_A, grid_B):
        raise GridMismatch("inclusion_check needs congruent grids")
    rep = classify(A, B, T, tol=tol, cond_threshold=cond_threshold)
    if rep.classification != SIMILAR:
        raise NotSimilar(f"pair classifies as {rep.classification}, not {SIMILAR}")
    tau = rep.tau
    in_B_small = grid_B.level_mask(eps / tau)
    in_A = grid_A.level_mask(eps)
    in_B_large = grid_B.level_mask(eps * tau)
    lower_viol = in_B_small & ~_dilate(in_A)
    upper_viol = in_A & ~_dilate(in_B_large)
    n_lower = int(lower_viol.sum())
    n_upper = int(upper_viol.sum())
    verdict = n_lower == 0 and n_upper == 0
    cells = lambda m: [[int(i), int(j)] for i, j in zip(*np.nonzero(m))][:64]
    return VerificationReport(
        check="pseudospectrum_inclusion_chain",
        verdict=verdict,
        residuals={"lower_violations": n_lower, "upper_violations": n_upper},
        thresholds={"eps": eps, "tau": tau, "slack_cells": 1},
        inputs={
            "A": matrix_digest(linalg.as_matrix(A)),
            "B": matrix_digest(linalg.as_matrix(B)),
            "T": matrix_digest(linalg.as_matrix(T)),
        },
        provenance="level-set transport under two-sided intertwining",
        details={
            "classification": rep.as_dict(),
            "lower_violating_cells": cells(lower_viol),
            "upper_violating_cells": cells(upper_viol),
        },
    )


def sandwich_check(
    A,
    eps: float,
    spec: Spectrum,
    nr: NumericalRangeBoundary,
    grid: PseudospectrumGrid,
) -> VerificationReport:
    """Spectrum-to-numerical-range sandwich of the eps level set.

    Lower inclusion (eps-neighborhood of the spectrum inside the level
    set) holds for every matrix and is asserted unconditionally.  The
    upper inclusion (level set inside the eps-neighborhood of the closed
    numerical range) needs a connected complement with nonempty resolvent
    intersection; that hypothesis is not decided here, so an upper
    failure is reported together with the flag.
    """
    z = grid.zgrid()
    margin_ok = (
        np.all(spec.eigenvalues.real - eps >= grid.re_range[0])
        and np.all(spec.eigenvalues.real + eps <= grid.re_range[1])
        and np.all(spec.eigenvalues.imag - eps >= grid.im_range[0])
        and np.all(spec.eigenvalues.imag + eps <= grid.im_range[1])
    )
    if not margin_ok:
        raise GridMismatch("grid must cover an eps margin around the spectrum")
    dist_spec = distance_to_spectrum(z, spec)
    in_set = grid.level_mask(eps)
    scale = max(1.0, float(np.max(np.abs(spec.eigenvalues)) if len(spec.eigenvalues) else 1.0))
    # s_min(A - zI) <= dist(z, spectrum) holds exactly; allow roundoff only
    lower_viol = (dist_spec < eps) & (grid.smin >= eps) & (grid.smin - dist_spec > 1e-10 * scale)
    dist_nr = nr.outer_distance(z)
    upper_viol = in_set & (dist_nr >= eps)
    n_lower = int(lower_viol.sum())
    n_upper = int(upper_viol.sum())
    return VerificationReport(
        check="spectrum_numrange_sandwich",
        verdict=(n_lower == 0 and n_upper == 0),
        residuals={"lower_violations": n_lower, "upper_violations": n_upper},
        thresholds={"eps": eps},
        inputs={"A": matrix_digest(linalg.as_matrix(A))},
        provenance="universal resolvent-distance bound; support-function hull",
        details={
            "upper_inclusion_hypothesis": "complement of the closed numerical range "
            "connected and meeting the resolvent set; not decided by this tool",
            "lower_ok": n_lower == 0,
            "upper_ok": n_upper == 0,
        },
    )


@dataclass(frozen=True)
class TrivialityReport:
    """Tubular-neighborhood fit: C(eps) = max dist(z, spectrum)/eps over
    the eps level set.  NaN marks levels whose set is empty on the grid."""

    eps_levels: tuple
    C_estimates: tuple
    verdict: bool
    window: tuple
    C_max: float

    def as_dict(self) -> dict:
        return {
            "eps_levels": list(self.eps_levels),
            "C_estimates": [None if math.isnan(c) else float(c) for c in self.C_estimates],
            "verdict": bool(self.verdict),
            "window": list(map(list, self.window)),
            "C_max": float(self.C_max),
        }


def triviality_fit(spec: Spectrum, grid: PseudospectrumGrid, C_max: float = 10.0) -> TrivialityReport:
    """Fit tube constants and decide triviality within the grid window."""
    if not grid.eps_levels:
        raise ValueError("grid has no eps levels to fit")
    dist = distance_to_spectrum(grid.zgrid(), spec)
    estimates = []
    for eps in grid.eps_levels:
        mask = grid.level_mask(eps)
        if not mask.any():
            estimates.append(float("nan"))
            continue
        estimates.append(float(np.max(dist[mask]) / eps))
    finite = [c for c in estimates if not math.isnan(c)]
    verdict = bool(finite) and all(c <= C_max for c in finite)
    return TrivialityReport(
        eps_levels=tuple(grid.eps_levels),
        C_estimates=tuple(estimates),
        verdict=verdict,
        window=(grid.re_range, grid.im_range),
        C_max=C_max,
    )


def qs_witness(A, B, T, z: complex, eps: float, tol: float = 1e-8) -> VerificationReport:
    """Transport a pseudomode of A at z through T and verify the bound
    ||(B - z) T xi|| < eps ||T|| ||T^{-1} (T xi)||.

    xi is the right singular vector of A - z I at the smallest singular
    value, the optimal pseudomode.
    """
    a, b, t = (linalg.as_matrix(X) for X in (A, B, T))
    if not (a.shape == b.shape == t.shape):
        raise DimensionMismatch("A, B, T must share one dimension")
    res = intertwine_residual(a, b, t)
    if res > tol:
        raise NotIntertwining(f"intertwining residual {res:.3e} exceeds {tol:.0e}")
    n = a.shape[0]
    shifted = a - complex(z) * np.eye(n)
    U, s, Vh = np.linalg.svd(shifted)
    smin = float(s[-1])
    if smin >= eps:
        raise NotInPseudospectrum(
            f"s_min(A - zI) = {smin:.3e} >= eps = {eps:.3e} at z = {z}"
        )
    xi = Vh[-1].conj()
    eta = t @ xi
    lhs = float(np.linalg.norm((b - complex(z) * np.eye(n)) @ eta))
    T_norm = float(np.linalg.norm(t, 2))
    rhs = eps * T_norm * float(np.linalg.norm(np.linalg.solve(t, eta)))
    return VerificationReport(
        check="quasi_similarity_witness",
        verdict=lhs < rhs,
        residuals={"lhs": lhs, "rhs": rhs, "smin": smin, "intertwining": res},
        thresholds={"eps": eps, "tol": tol},
        inputs={"A": matrix_digest(a), "B": matrix_digest(b), "T": matrix_digest(t)},
        provenance="pseudomode transport inequality",
        details={"z": [float(np.real(z)), float(np.imag(z))]},
    )
