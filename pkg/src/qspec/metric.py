"""Metric operators and the lattice of weighted norms they generate.

A metric operator G (Hermitian, strictly positive) induces a family of
re-weighted norms ||xi||_W = ||W^{1/2} xi||.  Nine canonical weights form
a lattice: the plain norm (weight I), the G- and G^{-1}-weighted norms,
the four norms built from R = I + G and its counterpart for G^{-1}, and
the meet/join combinations G + G^{-1} and (G + G^{-1})^{-1}.  All nine are
simultaneous functions of G, so identities between them hold exactly up
to roundoff.

Also here: the continuous-scale norms indexed by a real exponent, the
pairing between dual weights, and representative matrices/norms of an
operator viewed as a map between two lattice nodes.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from . import linalg
from .errors import DimensionMismatch, DomainError, NotHermitian, NotPositive
from .linalg import HermitianEig


class MetricOperator:
    """Hermitian positive-definite matrix with its eigendecomposition cached.

    Immutable after construction; fractional powers are computed through
    the cached eigenvectors, which keeps every derived weight exactly
    simultaneously diagonalizable with G.
    """

    def __init__(self, matrix: np.ndarray, eig: HermitianEig, condition: float):
        matrix = np.asarray(matrix, dtype=complex)
        matrix.setflags(write=False)
        self.matrix = matrix
        self.eig = eig
        self.condition = float(condition)
        self._power_cache: dict[float, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply_function(self, f) -> np.ndarray:
        """V f(Lambda) V* using the cached eigenvectors (symmetrized)."""
        w = np.asarray(f(self.eig.eigenvalues), dtype=float)
        V = self.eig.eigenvectors
        out = (V * w) @ V.conj().T
        out = (out + out.conj().T) / 2.0
        out.setflags(write=False)
        return out

    def power(self, alpha: float) -> np.ndarray:
        """G^alpha (cached)."""
        key = float(alpha)
        if key not in self._power_cache:
            if key == 1.0:
                self._power_cache[key] = self.matrix
            else:
                self._power_cache[key] = self.apply_function(lambda t: t**key)
        return self._power_cache[key]


def make_metric(M) -> MetricOperator:
    """Validate M as a metric operator (Hermitian, all eigenvalues > 0)."""
    A = linalg.as_matrix(M)
    eig = linalg.hermitian_eig(A)  # raises NotHermitian on drift
    wmin = float(eig.eigenvalues[0])
    wmax = float(eig.eigenvalues[-1])
    if wmin <= 0.0:
        raise NotPositive(
            f"matrix is not strictly positive: min eigenvalue {wmin:.6e}",
            min_eigenvalue=wmin,
        )
    return MetricOperator((A + A.conj().T) / 2.0, eig, wmax / wmin)


class LatticeNode(Enum):
    """The nine weighted spaces generated by a metric G.

    MEET is the intersection-type node (weight G + G^{-1}); JOIN the
    sum-type node (weight (G + G^{-1})^{-1}); between them sit the plain
    space H, the weights G and G^{-1}, and the four weights built from
    I + G and I + G^{-1} and their inverses.
    """

    MEET = "meet"
    H_RGINV = "h_rginv"          # weight I + G^{-1}
    H_RG = "h_rg"                # weight I + G
    H = "h"                      # weight I
    H_GINV = "h_ginv"            # weight G^{-1}
    H_G = "h_g"                  # weight G
    H_RG_INV = "h_rg_inv"        # weight (I + G)^{-1}
    H_RGINV_INV = "h_rginv_inv"  # weight (I + G^{-1})^{-1}
    JOIN = "join"


_WEIGHT_FUNCS = {
    LatticeNode.MEET: lambda t: t + 1.0 / t,
    LatticeNode.H_RGINV: lambda t: 1.0 + 1.0 / t,
    LatticeNode.H_RG: lambda t: 1.0 + t,
    LatticeNode.H: lambda t: np.ones_like(t),
    LatticeNode.H_GINV: lambda t: 1.0 / t,
    LatticeNode.H_G: lambda t: t,
    LatticeNode.H_RG_INV: lambda t: 1.0 / (1.0 + t),
    LatticeNode.H_RGINV_INV: lambda t: t / (1.0 + t),
    LatticeNode.JOIN: lambda t: 1.0 / (t + 1.0 / t),
}

# Continuous-embedding arrows of the lattice diagram: (smaller, larger).
LATTICE_EDGES = (
    (LatticeNode.MEET, LatticeNode.H_RGINV),
    (LatticeNode.MEET, LatticeNode.H_RG),
    (LatticeNode.H_RGINV, LatticeNode.H_GINV),
    (LatticeNode.H_RGINV, LatticeNode.H),
    (LatticeNode.H_RG, LatticeNode.H),
    (LatticeNode.H_RG, LatticeNode.H_G),
    (LatticeNode.H_GINV, LatticeNode.H_RG_INV),
    (LatticeNode.H, LatticeNode.H_RG_INV),
    (LatticeNode.H, LatticeNode.H_RGINV_INV),
    (LatticeNode.H_G, LatticeNode.H_RGINV_INV),
    (LatticeNode.H_RG_INV, LatticeNode.JOIN),
    (LatticeNode.H_RGINV_INV, LatticeNode.JOIN),
)


def _node(node) -> LatticeNode:
    if isinstance(node, LatticeNode):
        return node
    try:
        return LatticeNode(str(node))
    except ValueError as exc:
        names = ", ".join(m.value for m in LatticeNode)
        raise DomainError(f"unknown lattice node {node!r}; expected one of {names}") from exc


def node_weight(node, G: MetricOperator) -> MetricOperator:
    """The weight W with ||xi||_node = ||W^{1/2} xi||, as a metric operator."""
    node = _node(node)
    func = _WEIGHT_FUNCS[node]
    vals = np.asarray(func(G.eig.eigenvalues), dtype=float)
    order = np.argsort(vals)
    eig = HermitianEig(
        vals[order].copy(), np.ascontiguousarray(G.eig.eigenvectors[:, order])
    )
    eig.eigenvalues.setflags(write=False)
    eig.eigenvectors.setflags(write=False)
    matrix = G.apply_function(func)
    return MetricOperator(matrix, eig, float(vals.max() / vals.min()))


def _sqrt_weight(node, G: MetricOperator) -> np.ndarray:
    func = _WEIGHT_FUNCS[_node(node)]
    return G.apply_function(lambda t: np.sqrt(func(t)))


def node_norm(node, G: MetricOperator, xi) -> float:
    """||W^{1/2} xi|| for the node's weight W."""
    v = linalg.as_vector(xi, G.dim)
    return float(np.linalg.norm(_sqrt_weight(node, G) @ v))


def scale_norm(G: MetricOperator, alpha: float, xi, variant: str = "graph") -> float:
    """Norm of the continuous scale indexed by alpha.

    graph (default): sqrt(||xi||^2 + ||G^{alpha/2} xi||^2); at alpha = 0
    this is sqrt(2)*||xi||.  power: ||(I+G)^{alpha/2} xi||.  The two are
    equivalent norms but different numbers.
    """
    if not np.isfinite(alpha):
        raise DomainError(f"scale index must be finite, got {alpha}")
    v = linalg.as_vector(xi, G.dim)
    if variant == "graph":
        half = G.apply_function(lambda t: t ** (alpha / 2.0))
        return float(np.sqrt(np.linalg.norm(v) ** 2 + np.linalg.norm(half @ v) ** 2))
    if variant == "power":
        half = G.apply_function(lambda t: (1.0 + t) ** (alpha / 2.0))
        return float(np.linalg.norm(half @ v))
    raise DomainError(f"unknown scale-norm variant {variant!r}; expected 'graph' or 'power'")


def pip_pairing(G: MetricOperator, xi, eta) -> complex:
    """Pairing <G^{1/2} xi, G^{-1/2} eta> between dual weights.

    In finite dimension this equals the plain inner product up to
    cancellation roundoff that grows with cond(G)^{1/2}.
    """
    x = linalg.as_vector(xi, G.dim)
    y = linalg.as_vector(eta, G.dim)
    return linalg.inner(G.power(0.5) @ x, G.power(-0.5) @ y)


def embedding(node_from, node_to, G: MetricOperator) -> np.ndarray:
    """Representative of the identity between two nodes:
    E = W_to^{1/2} W_from^{-1/2}, built as a single function of G."""
    f_from = _WEIGHT_FUNCS[_node(node_from)]
    f_to = _WEIGHT_FUNCS[_node(node_to)]
    return G.apply_function(lambda t: np.sqrt(f_to(t) / f_from(t)))


def representative(A, node_from, node_to, G: MetricOperator) -> np.ndarray:
    """The (from -> to) representative W_to^{1/2} A W_from^{-1/2}."""
    M = linalg.as_matrix(A)
    if M.shape[0] != G.dim:
        raise DimensionMismatch(f"operator dimension {M.shape[0]} != metric dimension {G.dim}")
    f_from = _WEIGHT_FUNCS[_node(node_from)]
    left = _sqrt_weight(node_to, G)
    right = G.apply_function(lambda t: 1.0 / np.sqrt(f_from(t)))
    return left @ M @ right


def representative_norm(A, node_from, node_to, G: MetricOperator) -> float:
    """Operator 2-norm of the (from -> to) representative."""
    return float(np.linalg.norm(representative(A, node_from, node_to, G), 2))


def lattice_order_constant(node_from, node_to, G: MetricOperator) -> float:
    """The best constant c with ||xi||_to <= c ||xi||_from for all xi.

    Because all weights are functions of G, c is the max over the spectrum
    of sqrt(w_to / w_from); this is also the norm of the embedding."""
    f_from = _WEIGHT_FUNCS[_node(node_from)]
    f_to = _WEIGHT_FUNCS[_node(node_to)]
    t = G.eig.eigenvalues
    return float(np.max(np.sqrt(f_to(t) / f_from(t))))
