"""Spectrum and frequency response models."""

from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from tangent_bundle_nn.core.errors import SpectralError


class SheafSpectrum(BaseModel):
    """Eigenpairs ``(lambda_i, phi_i)`` of ``-Delta``, ``lambda`` ascending.

    Eigenvectors are orthonormal in the degree-weighted product
    ``<a, b> = (1/n) sum_k m_k a_k b_k`` with ``m = metric``. When degrees
    are uniform ``m`` is all ones and this is the plain sheaf inner product.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    metric: np.ndarray
    n_nodes: int = Field(ge=1)
    d_hat: int = Field(ge=1)

    @property
    def dim(self) -> int:
        return int(self.eigenvectors.shape[0])

    @property
    def count(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def is_complete(self) -> bool:
        return self.count == self.dim

    def _weighted(self, signal: np.ndarray) -> np.ndarray:
        if signal.shape[0] != self.dim:
            raise SpectralError.build(
                "dimension_mismatch", "Signal length {actual} does not match spectrum {expected}",
                actual=signal.shape[0], expected=self.dim,
            )
        return signal * (self.metric if signal.ndim == 1 else self.metric[:, None])

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        """Degree-weighted inner product of two single-feature signals."""
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        if a.shape != b.shape:
            raise SpectralError.build(
                "dimension_mismatch", "Signal shapes differ: {left} vs {right}",
                left=a.shape, right=b.shape,
            )
        return float(np.sum(self._weighted(a) * b) / self.n_nodes)

    def norm_sq(self, signal: np.ndarray) -> float:
        return self.inner(signal, signal)

    def project(self, signal: np.ndarray) -> np.ndarray:
        """Coefficients ``<f, phi_i>`` for every stored eigenvector."""
        weighted = self._weighted(np.asarray(signal, dtype=np.float64))
        return self.eigenvectors.T @ weighted / self.n_nodes


class FirFrequencyResponse(BaseModel):
    """``h(lambda) = sum_k h_k exp(-k lambda)`` for FIR taps ``h_0 .. h_{K-1}``."""

    model_config = ConfigDict(frozen=True)

    taps: tuple[float, ...]

    @field_validator("taps", mode="before")
    @classmethod
    def _check_taps(cls, value: Any) -> tuple[float, ...]:
        taps = tuple(float(v) for v in np.asarray(value, dtype=np.float64).ravel())
        if not taps:
            raise SpectralError.build("invalid_taps", "A filter needs at least one tap")
        if not all(np.isfinite(taps)):
            raise SpectralError.build("invalid_taps", "Filter taps must be finite")
        return taps

    def __call__(self, lam: np.ndarray | float) -> np.ndarray:
        decay = np.exp(-np.asarray(lam, dtype=np.float64))
        # Horner in exp(-lambda); large lambda underflows to the h_0 term.
        response = np.zeros_like(decay)
        for tap in reversed(self.taps):
            response = response * decay + tap
        return response
