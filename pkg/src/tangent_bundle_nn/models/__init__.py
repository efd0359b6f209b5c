"""Domain models: point clouds, sheaves, spectra and result records."""

from tangent_bundle_nn.models.enums import ManifoldTag, ModelTag, Nonlinearity, ShiftMethod
from tangent_bundle_nn.models.geometry import AmbientField, PointCloud
from tangent_bundle_nn.models.results import (
    BandlimitReport,
    ConvergenceRow,
    ExperimentReport,
    ResponseAnalysis,
    ResultRow,
    SpectralRow,
    SummaryRow,
)
from tangent_bundle_nn.models.sheaf import DENSE_CAP, CellularSheaf, OrthogonalSheaf
from tangent_bundle_nn.models.spectral import FirFrequencyResponse, SheafSpectrum

__all__ = [
    "DENSE_CAP",
    "AmbientField",
    "BandlimitReport",
    "CellularSheaf",
    "ConvergenceRow",
    "ExperimentReport",
    "FirFrequencyResponse",
    "ManifoldTag",
    "ModelTag",
    "Nonlinearity",
    "OrthogonalSheaf",
    "PointCloud",
    "ResponseAnalysis",
    "ResultRow",
    "SheafSpectrum",
    "ShiftMethod",
    "SpectralRow",
    "SummaryRow",
]
