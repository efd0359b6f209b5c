"""Structural validators for sheaves and frequency responses."""

from tangent_bundle_nn.validation.validators import (
    BlockSymmetryValidator,
    LipschitzValidator,
    NonAmplifyingValidator,
    OrthogonalTransportsValidator,
    OrthonormalBasesValidator,
    PositiveDegreeValidator,
    SpectralSignValidator,
    create_response_validators,
    create_sheaf_validators,
)

__all__ = [
    "BlockSymmetryValidator",
    "LipschitzValidator",
    "NonAmplifyingValidator",
    "OrthogonalTransportsValidator",
    "OrthonormalBasesValidator",
    "PositiveDegreeValidator",
    "SpectralSignValidator",
    "create_response_validators",
    "create_sheaf_validators",
]
