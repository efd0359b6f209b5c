"""Eigendecomposition of the sheaf Laplacian and spectral filtering."""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

from tangent_bundle_nn.core.errors import SpectralError
from tangent_bundle_nn.models.results import BandlimitReport
from tangent_bundle_nn.models.sheaf import CellularSheaf
from tangent_bundle_nn.models.spectral import SheafSpectrum
from tangent_bundle_nn.protocols import FrequencyResponseProtocol

logger = logging.getLogger(__name__)

PARTIAL_SPECTRUM_TOL = 1e-10


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the first entry that is not negligible is positive."""
    scale = np.max(np.abs(vectors), axis=0, keepdims=True)
    significant = np.abs(vectors) > 1e-12 * scale
    first = np.argmax(significant, axis=0)
    signs = np.sign(vectors[first, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigendecompose(sheaf: CellularSheaf, count: int | None = None) -> SheafSpectrum:
    """Eigenpairs of ``-Delta`` via the symmetrized problem.

    Solves ``D^1/2 Delta D^-1/2 u = mu u`` with a dense symmetric solver,
    stores ``lambda = -mu`` ascending and back-transforms
    ``phi = sqrt(n c) D^-1/2 u`` (``c = mean(ndeg)``) so that the ``phi``
    are orthonormal in the degree-weighted product.

    Args:
        sheaf: Assembled sheaf.
        count: Number of smallest eigenvalues to keep; ``None`` keeps all.
    """
    size = sheaf.dim
    if size > sheaf.dense_cap:
        raise SpectralError.build(
            "dimension_overflow",
            "Dense eigensolver limited to n*d_hat <= {cap}, got {size}",
            cap=sheaf.dense_cap, size=size,
        )
    if count is not None and count < 1:
        raise SpectralError.build("invalid_count", "count must be >= 1, got {count}", count=count)
    keep = size if count is None else min(count, size)

    logger.debug("Eigendecomposition: size=%d, keep=%d", size, keep)
    try:
        if keep == size:
            mu, vectors = scipy.linalg.eigh(sheaf.symmetrized)
        else:
            mu, vectors = scipy.linalg.eigh(
                sheaf.symmetrized, subset_by_index=[size - keep, size - 1]
            )
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SpectralError.from_exception("convergence_failure", e) from e

    eigenvalues = -mu[::-1]
    vectors = vectors[:, ::-1]

    stalk_degrees = np.repeat(sheaf.normalized_degrees, sheaf.d_hat)
    scale = np.sqrt(sheaf.n * sheaf.normalized_degrees.mean())
    eigenvectors = _fix_signs(scale * vectors / np.sqrt(stalk_degrees)[:, None])
    return SheafSpectrum(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        metric=sheaf.stalk_metric,
        n_nodes=sheaf.n,
        d_hat=sheaf.d_hat,
    )


def frequency_coeffs(spectrum: SheafSpectrum, signal: np.ndarray) -> np.ndarray:
    """``[f_hat]_i = <f, phi_i>`` for every eigenvector in ``spectrum``."""
    return spectrum.project(signal)


def _unresolved_fraction(spectrum: SheafSpectrum, signal: np.ndarray, coeffs: np.ndarray) -> float:
    energy = spectrum.norm_sq(signal)
    if energy == 0.0:
        return 0.0
    return max(energy - float(np.sum(coeffs**2)), 0.0) / energy


def spectral_filter(
    spectrum: SheafSpectrum, response: FrequencyResponseProtocol, signal: np.ndarray
) -> np.ndarray:
    """``g = sum_i h(lambda_i) <f, phi_i> phi_i``.

    Raises:
        SpectralError: ``partial_spectrum`` when the spectrum is truncated and
            ``signal`` has energy outside the stored eigenvectors.
    """
    signal = np.asarray(signal, dtype=np.float64)
    coeffs = frequency_coeffs(spectrum, signal)
    if not spectrum.is_complete:
        columns = signal.T if signal.ndim == 2 else signal[None, :]
        column_coeffs = coeffs.T if coeffs.ndim == 2 else coeffs[None, :]
        for column, column_coeff in zip(columns, column_coeffs, strict=True):
            missing = _unresolved_fraction(spectrum, column, column_coeff)
            if missing > PARTIAL_SPECTRUM_TOL:
                raise SpectralError.build(
                    "partial_spectrum",
                    "Spectrum holds {count} of {dim} eigenpairs and the signal has "
                    "{missing} of its energy outside them",
                    count=spectrum.count, dim=spectrum.dim, missing=missing,
                )
    gains = np.asarray(response(spectrum.eigenvalues), dtype=np.float64)
    weighted = gains * coeffs if coeffs.ndim == 1 else gains[:, None] * coeffs
    return spectrum.eigenvectors @ weighted


def is_bandlimited(
    spectrum: SheafSpectrum, signal: np.ndarray, lambda_m: float, tol: float = 1e-10
) -> BandlimitReport:
    """Whether the energy above ``lambda_m`` is at most ``tol`` of the total.

    Energy not captured by a truncated spectrum counts as high-frequency.
    """
    signal = np.asarray(signal, dtype=np.float64)
    energy = spectrum.norm_sq(signal)
    if energy == 0.0:
        return BandlimitReport(is_bandlimited=True, residual_fraction=0.0, lambda_m=lambda_m)
    coeffs = frequency_coeffs(spectrum, signal)
    above = float(np.sum(coeffs[spectrum.eigenvalues > lambda_m] ** 2))
    unresolved = _unresolved_fraction(spectrum, signal, coeffs) * energy
    residual = min((above + unresolved) / energy, 1.0)
    return BandlimitReport(
        is_bandlimited=residual <= tol, residual_fraction=residual, lambda_m=lambda_m
    )
