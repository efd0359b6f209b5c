"""tangent-bundle-nn: tangent bundle filters and neural networks on point clouds.

A point cloud sampled from a manifold is turned into an orthogonal cellular
sheaf (local PCA bases plus transport maps between neighbors). Its sheaf
Laplacian drives FIR filters and DD-TNN layers on tangent vector fields.

Quick Start:
    >>> from tangent_bundle_nn import (
    ...     build_sheaf, rotational_field, sample_field, sample_sphere, shift_operator,
    ... )
    >>> cloud = sample_sphere(200, seed=0)
    >>> sheaf = build_sheaf(cloud)
    >>> signal = sample_field(sheaf, rotational_field(cloud))
    >>> P = shift_operator(sheaf)

    # Filter the field and map it back to R^3
    >>> from tangent_bundle_nn import FirFilter, apply_fir, lift_signal
    >>> smoothed = lift_signal(sheaf, apply_fir(P, FirFilter(taps=[0.5, 0.5]), signal))
"""

from __future__ import annotations  # noqa: I001

from tangent_bundle_nn.core import (
    ConfigurationError,
    FilterError,
    GeometryError,
    SheafError,
    SpectralError,
    TangentBundleError,
    TrainingError,
)
from tangent_bundle_nn.filters import (
    FirFilter,
    ShiftOperator,
    apply_fir,
    shift_from_laplacian,
    shift_operator,
)
from tangent_bundle_nn.geometry import add_awgn, rotational_field, sample_sphere
from tangent_bundle_nn.models import (
    AmbientField,
    CellularSheaf,
    FirFrequencyResponse,
    ModelTag,
    Nonlinearity,
    OrthogonalSheaf,
    PointCloud,
    SheafSpectrum,
    ShiftMethod,
)
from tangent_bundle_nn.nn import (
    AdamState,
    TnnLayerParams,
    TnnModel,
    backward,
    evaluate_mse,
    forward,
    init_model,
    mnn_baseline,
    train_denoiser,
)
from tangent_bundle_nn.sheaf import (
    assemble_laplacian,
    build_sheaf,
    default_epsilon,
    kernel_weights,
    lift_signal,
    local_pca,
    sample_field,
    sheaf_inner_product,
    transport_operators,
    trivial_sheaf,
)
from tangent_bundle_nn.spectral import (
    analyze_response,
    eigendecompose,
    frequency_coeffs,
    is_bandlimited,
    spectral_filter,
)

# Dynamic version from package metadata (set in pyproject.toml)
from importlib.metadata import PackageNotFoundError, version as _get_version

try:
    __version__ = _get_version("tangent-bundle-nn")
except PackageNotFoundError:
    __version__ = "0.0.0"
__package_name__ = "tangent-bundle-nn"

__all__ = [
    "__version__",
    # Errors
    "ConfigurationError",
    "FilterError",
    "GeometryError",
    "SheafError",
    "SpectralError",
    "TangentBundleError",
    "TrainingError",
    # Geometry
    "AmbientField",
    "PointCloud",
    "add_awgn",
    "rotational_field",
    "sample_sphere",
    # Sheaf
    "CellularSheaf",
    "OrthogonalSheaf",
    "assemble_laplacian",
    "build_sheaf",
    "default_epsilon",
    "kernel_weights",
    "lift_signal",
    "local_pca",
    "sample_field",
    "sheaf_inner_product",
    "transport_operators",
    "trivial_sheaf",
    # Spectral
    "FirFrequencyResponse",
    "SheafSpectrum",
    "analyze_response",
    "eigendecompose",
    "frequency_coeffs",
    "is_bandlimited",
    "spectral_filter",
    # Filters
    "FirFilter",
    "ShiftMethod",
    "ShiftOperator",
    "apply_fir",
    "shift_from_laplacian",
    "shift_operator",
    # Networks
    "AdamState",
    "ModelTag",
    "Nonlinearity",
    "TnnLayerParams",
    "TnnModel",
    "backward",
    "evaluate_mse",
    "forward",
    "init_model",
    "mnn_baseline",
    "train_denoiser",
]
