"""Verification-report record shared by the checking modules."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np


def matrix_digest(M) -> str:
    """Short content hash of a matrix or vector, for report provenance."""
    a = np.ascontiguousarray(np.asarray(M, dtype=complex))
    return hashlib.sha256(a.tobytes()).hexdigest()[:16]


@dataclass
class VerificationReport:
    """Outcome of one named check: residuals, thresholds and a verdict.

    ``inputs`` holds labels and content hashes of the operators checked;
    ``provenance`` says how the expected values are known (closed form,
    algebraic identity, independent oracle, measured convergence, ...).
    """

    check: str
    verdict: bool
    residuals: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    provenance: str | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        def clean(x):
            if isinstance(x, dict):
                return {str(k): clean(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [clean(v) for v in x]
            if isinstance(x, (np.floating, float)):
                return float(x)
            if isinstance(x, (np.integer, int)):
                return int(x)
            if isinstance(x, (np.bool_, bool)):
                return bool(x)
            if isinstance(x, (np.complexfloating, complex)):
                return [float(np.real(x)), float(np.imag(x))]
            if isinstance(x, np.ndarray):
                return clean(x.tolist())
            return x

        return {
            "check": self.check,
            "verdict": bool(self.verdict),
            "residuals": clean(self.residuals),
            "thresholds": clean(self.thresholds),
            "inputs": clean(self.inputs),
            "provenance": self.provenance,
            "details": clean(self.details),
        }

    def summary(self) -> str:
        status = "PASS" if self.verdict else "FAIL"
        parts = [f"{k}={v:.3e}" if isinstance(v, float) else f"{k}={v}"
                 for k, v in list(self.residuals.items())[:3]]
        detail = ", ".join(parts)
        return f"{status} {self.check}" + (f" ({detail})" if detail else "")
