"""Core utilities: package errors and the plugin factory base."""

from tangent_bundle_nn.core.errors import (
    PACKAGE_NAME,
    ConfigurationError,
    FilterError,
    GeometryError,
    SheafError,
    SpectralError,
    TangentBundleError,
    TrainingError,
    check_same_length,
    error_from_validation,
)
from tangent_bundle_nn.core.factory import PluginFactory

__all__ = [
    "PACKAGE_NAME",
    "ConfigurationError",
    "FilterError",
    "GeometryError",
    "PluginFactory",
    "SheafError",
    "SpectralError",
    "TangentBundleError",
    "TrainingError",
    "check_same_length",
    "error_from_validation",
]
