"""Finite-dimensional operator builders on three bases.

Bases
-----
``uniform``  equally spaced nodes on [-L, L]; functions are node samples.
``fourier``  periodic grid of even size on [-L, L); exact spectral
             differentiation.
``hermite``  first n harmonic-oscillator (number-basis) modes with length
             scale L; the position matrix is the usual ladder tridiagonal.

``example_pair`` exposes a registry of worked triples (A, B, T) with
``B T = T A``: an oblique/orthogonal projection pair, a first-derivative
pair, and a shifted harmonic oscillator with its exponential weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg
from .errors import BasisMismatch, DomainError, UnknownExample, ZeroVector

BASIS_KINDS = ("uniform", "fourier", "hermite")


@dataclass(frozen=True)
class BasisSpec:
    """Basis family, size and domain half-width / length scale."""

    kind: str
    n: int
    L: float = 1.0

    def __post_init__(self):
        if self.kind not in BASIS_KINDS:
            raise BasisMismatch(f"unknown basis kind {self.kind!r}; expected one of {BASIS_KINDS}")
        if self.n < 2:
            raise BasisMismatch(f"basis size must be at least 2, got {self.n}")
        if not (np.isfinite(self.L) and self.L > 0):
            raise BasisMismatch(f"domain parameter L must be positive, got {self.L}")
        if self.kind == "fourier" and self.n % 2 != 0:
            raise BasisMismatch("fourier basis requires an even size")

    def nodes(self) -> np.ndarray:
        """Collocation nodes (grid bases only)."""
        if self.kind == "uniform":
            return np.linspace(-self.L, self.L, self.n)
        if self.kind == "fourier":
            return -self.L + 2.0 * self.L * np.arange(self.n) / self.n
        raise BasisMismatch("the hermite basis has no collocation nodes")


@dataclass(frozen=True)
class LinearOperator:
    """Dense complex square matrix tagged with its basis."""

    matrix: np.ndarray
    basis: BasisSpec | None = None
    label: str = ""

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.basis is not None and self.basis.n != m.shape[0]:
            raise BasisMismatch(
                f"matrix dimension {m.shape[0]} does not match basis size {self.basis.n}"
            )

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ExamplePair:
    """A worked triple (A, B, T) with B T = T A, plus its known facts.

    ``expected`` maps fact names to records carrying a value/formula and a
    ``source`` label saying how the fact is known (closed form, algebraic
    identity, construction, ...).
    """

    name: str
    A: LinearOperator
    B: LinearOperator
    T: LinearOperator
    expected: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.A.basis == self.B.basis == self.T.basis):
            raise BasisMismatch("A, B, T of an example pair must share one basis")


def _hermite_ladder(n: int) -> np.ndarray:
    # a[k, k+1] = sqrt(k+1): annihilation in the number basis
    a = np.zeros((n, n), dtype=complex)
    a[np.arange(n - 1), np.arange(1, n)] = np.sqrt(np.arange(1, n))
    return a


def position_operator(basis: BasisSpec) -> LinearOperator:
    """Multiplication by x: diagonal on grids, ladder tridiagonal on hermite."""
    if basis.kind in ("uniform", "fourier"):
        X = np.diag(basis.nodes()).astype(complex)
    else:
        a = _hermite_ladder(basis.n)
        X = basis.L * (a + a.conj().T) / np.sqrt(2.0)
    return LinearOperator(X, basis, "X")


def momentum_operator(basis: BasisSpec) -> LinearOperator:
    """Hermitian momentum p = -i d/dx (hermite basis only)."""
    if basis.kind != "hermite":
        raise BasisMismatch("momentum_operator is defined on the hermite basis")
    a = _hermite_ladder(basis.n)
    P = 1j * (a.conj().T - a) / (np.sqrt(2.0) * basis.L)
    return LinearOperator(P, basis, "P")


def derivative_operator(basis: BasisSpec) -> LinearOperator:
    """First derivative d/dx.

    fourier: exact spectral differentiation (anti-Hermitian; the Nyquist
    mode is zeroed so the matrix stays real and anti-symmetric).
    uniform: central differences; the first and last rows are zero, and
    residual measurements should skip them ("interior residual").
    hermite: i*p, anti-Hermitian by construction.
    """
    if basis.kind == "fourier":
        n, L = basis.n, basis.L
        k = 2.0 * np.pi * np.fft.fftfreq(n, d=2.0 * L / n)
        k[n // 2] = 0.0
        F = np.fft.fft(np.eye(n), axis=0)
        D = np.fft.ifft(1j * k[:, None] * F, axis=0)
        D = (D - D.conj().T) / 2.0  # kill roundoff asymmetry
        return LinearOperator(D, basis, "D")
    if basis.kind == "uniform":
        n = basis.n
        h = 2.0 * basis.L / (n - 1)
        D = np.zeros((n, n), dtype=complex)
        idx = np.arange(1, n - 1)
        D[idx, idx + 1] = 1.0 / (2.0 * h)
        D[idx, idx - 1] = -1.0 / (2.0 * h)
        return LinearOperator(D, basis, "D")
    return LinearOperator(1j * momentum_operator(basis).matrix, basis, "D")


def multiplication_operator(basis: BasisSpec, f: Callable, label: str = "f(X)") -> LinearOperator:
    """Multiplication by f(x): diagonal of node values on grids, f of the
    position matrix (through its eigendecomposition) on hermite."""
    if basis.kind in ("uniform", "fourier"):
        vals = np.asarray(f(basis.nodes()), dtype=complex)
        if not np.all(np.isfinite(vals.view(float))):
            bad = basis.nodes()[~np.isfinite(vals.view(float).reshape(-1, 2)).any(axis=1)]
            raise DomainError(f"function is not finite at grid nodes (e.g. x={bad[:3]})")
        return LinearOperator(np.diag(vals), basis, label)
    X = position_operator(basis).matrix
    return LinearOperator(linalg.matrix_function_hermitian(X, f), basis, label)


def rank_one(u, v, basis: BasisSpec | None = None, label: str = "u(x)v*") -> LinearOperator:
    """The rank-one operator x -> inner(x, v) * u, i.e. the matrix u v*."""
    uu = linalg.as_vector(u)
    vv = linalg.as_vector(v, dim=uu.shape[0])
    if np.linalg.norm(uu) == 0.0 or np.linalg.norm(vv) == 0.0:
        raise ZeroVector("rank-one factors must be nonzero")
    return LinearOperator(np.outer(uu, vv.conj()), basis, label)


def shifted_oscillator(alpha: float, omega: float, basis: BasisSpec) -> LinearOperator:
    """H = (p - i*alpha)^2/2 + omega^2 x^2/2 on the hermite basis.

    Assembled from the truncated position and momentum matrices;
    non-Hermitian for alpha != 0, yet with real low-lying spectrum
    omega*(k + 1/2) up to truncation error.
    """
    if basis.kind != "hermite":
        raise BasisMismatch("shifted_oscillator requires the hermite basis")
    if not (np.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be positive, got {omega}")
    X = position_operator(basis).matrix
    P = momentum_operator(basis).matrix
    shifted = P - 1j * alpha * np.eye(basis.n)
    H = 0.5 * (shifted @ shifted) + 0.5 * omega**2 * (X @ X)
    return LinearOperator(H, basis, f"oscillator(alpha={alpha}, omega={omega})")


def _default_projection_vector(basis: BasisSpec) -> np.ndarray:
    # Normalized Gaussian: node samples of exp(-x^2/2) on grids, the
    # ground-state coefficient vector on hermite.
    if basis.kind == "hermite":
        phi = np.zeros(basis.n, dtype=complex)
        phi[0] = 1.0
        return phi
    phi = np.exp(-basis.nodes() ** 2 / 2.0).astype(complex)
    return phi / np.linalg.norm(phi)


def example_pair(name: str, basis: BasisSpec, **params) -> ExamplePair:
    """Return a registered triple (A, B, T) with B T = T A.

    projection  A = orthogonal projection P onto phi, B = the oblique
                rank-one image u v* with u = T phi, v = T^{-1} phi, and
                T = (I + X^2)^{-1}; the intertwining is an exact algebraic
                identity.  Optional param: ``phi``.
    derivative  A f = f' - (2x/(1+x^2)) f, B f = f', T = (I + X^2)^{-1};
                uniform or fourier grids.
    oscillator  A = shifted oscillator, B = the harmonic oscillator,
                T = exp(alpha*X) (the square root of the exponential
                weight exp(2*alpha*X)); hermite basis.  Optional params:
                ``alpha`` (default 0.5), ``omega`` (default 1.0).
    """
    if name == "projection":
        phi = params.get("phi")
        phi = _default_projection_vector(basis) if phi is None else linalg.as_vector(phi, basis.n)
        phi = phi / np.linalg.norm(phi)
        T = multiplication_operator(basis, lambda x: 1.0 / (1.0 + x**2), "(I+X^2)^-1")
        Tinv = multiplication_operator(basis, lambda x: 1.0 + x**2, "I+X^2")
        u = T.matrix @ phi
        v = Tinv.matrix @ phi
        A = rank_one(phi, phi, basis, "P_phi")
        B = rank_one(u, v, basis, "A_phi")
        expected = {
            "spectrum": {
                "value": {0.0: basis.n - 1, 1.0: 1},
                "source": "closed form: both operators are rank one with unit trace",
            },
            "norm_B": {
                "value": float(np.linalg.norm(u) * np.linalg.norm(v)),
                "source": "closed form: norm of a rank-one operator",
            },
            "smin_A": {
                "formula": "min(|z|, |1-z|)",
                "source": "closed form: resolvent norm of an orthogonal projection",
            },
            "numerical_range_A": {
                "value": "segment [0, 1]",
                "source": "closed form: Hermitian with spectrum {0, 1}",
            },
            "intertwining": {
                "value": 0.0,
                "source": "algebraic identity: B T f = inner(f, phi) u = T A f",
            },
        }
        return ExamplePair("projection", A, B, T, expected)

    if name == "derivative":
        if basis.kind not in ("uniform", "fourier"):
            raise BasisMismatch("the derivative pair needs a uniform or fourier grid")
        D = derivative_operator(basis)
        g = multiplication_operator(basis, lambda x: 2.0 * x / (1.0 + x**2), "2x/(1+x^2)")
        T = multiplication_operator(basis, lambda x: 1.0 / (1.0 + x**2), "(I+X^2)^-1")
        A = LinearOperator(D.matrix - g.matrix, basis, "D - 2x/(1+x^2)")
        expected = {
            "spectrum_B": {
                "value": "finite section of the imaginary axis",
                "source": "closed form: spectral differentiation is anti-Hermitian",
            },
            "pseudospectrum_B": {
                "formula": "strip |Re z| <= eps, within the covered frequency window",
                "source": "closed form: distance to the imaginary frequency set",
            },
            "intertwining": {
                "value": "O(h^2) on smooth interior samples (uniform); spectral (fourier)",
                "source": "identity: ((1+x^2)^{-1} f)' = (1+x^2)^{-1} (f' - 2x/(1+x^2) f)",
            },
        }
        return ExamplePair("derivative", A, D, T, expected)

    if name == "oscillator":
        if basis.kind != "hermite":
            raise BasisMismatch("the oscillator pair needs the hermite basis")
        alpha = float(params.get("alpha", 0.5))
        omega = float(params.get("omega", 1.0))
        A = shifted_oscillator(alpha, omega, basis)
        B = shifted_oscillator(0.0, omega, basis)
        T = multiplication_operator(basis, lambda x: np.exp(alpha * x), "exp(alpha X)")
        expected = {
            "low_eigenvalues": {
                "value": [omega * (k + 0.5) for k in range(5)],
                "source": "conjugation by exp(alpha x) maps A to the harmonic oscillator",
            },
            "metric": {
                "formula": "exp(2*alpha*X), T = its square root",
                "source": "construction",
            },
            "intertwining": {
                "value": "truncation-limited; deviation concentrated in the last modes",
                "source": "identity exact before truncation",
            },
        }
        return ExamplePair("oscillator", A, B, T, expected)

    raise UnknownExample(f"no example pair named {name!r}; known: projection, derivative, oscillator")
