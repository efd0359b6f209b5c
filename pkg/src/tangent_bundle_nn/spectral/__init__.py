"""Spectral representation of sheaf signals."""

from tangent_bundle_nn.models.spectral import FirFrequencyResponse, SheafSpectrum
from tangent_bundle_nn.spectral.io import export_spectrum, load_spectrum
from tangent_bundle_nn.spectral.response import analyze_response, response_grid
from tangent_bundle_nn.spectral.spectrum import (
    eigendecompose,
    frequency_coeffs,
    is_bandlimited,
    spectral_filter,
)

__all__ = [
    "FirFrequencyResponse",
    "SheafSpectrum",
    "analyze_response",
    "eigendecompose",
    "export_spectrum",
    "frequency_coeffs",
    "is_bandlimited",
    "load_spectrum",
    "response_grid",
    "spectral_filter",
]
