from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg
from abstract_validation_base import (
    BaseValidator,
    CompositeValidator,
    ValidationResult,
    ValidatorPipelineBuilder,
)

from tangent_bundle_nn.models.sheaf import CellularSheaf, OrthogonalSheaf

if TYPE_CHECKING:
    from tangent_bundle_nn.models.results import ResponseAnalysis


class OrthonormalBasesValidator(BaseValidator["CellularSheaf"]):
    """Checks ``O_i^T O_i = I`` for every tangent basis.

    Sheaves without bases (trivial or general cellular sheaves) pass.
    """

    def __init__(self, tolerance: float = 1e-10) -> None:
        self._tolerance = tolerance

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "orthonormal_bases"

    def validate(self, sheaf: CellularSheaf) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        if not isinstance(sheaf, OrthogonalSheaf):
            return result
        gram = np.einsum("ipa,ipb->iab", sheaf.bases, sheaf.bases)
        worst = float(np.max(np.abs(gram - np.eye(sheaf.d_hat))))
        if worst > self._tolerance:
            result.add_error(
                field="bases",
                message=f"Tangent bases deviate from orthonormal by {worst:.3e}",
                value=worst,
            )
        return result


class OrthogonalTransportsValidator(BaseValidator["CellularSheaf"]):
    """Checks ``O_ij O_ij^T = I`` for every stored edge map."""

    def __init__(self, tolerance: float = 1e-10) -> None:
        self._tolerance = tolerance

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "orthogonal_transports"

    def validate(self, sheaf: CellularSheaf) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        if sheaf.transports.shape[0] == 0:
            return result
        products = sheaf.transports @ sheaf.transports.transpose(0, 2, 1)
        worst = float(np.max(np.abs(products - np.eye(sheaf.d_hat))))
        if worst > self._tolerance:
            result.add_error(
                field="transports",
                message=f"Transport maps deviate from orthogonal by {worst:.3e}",
                value=worst,
            )
        return result


class BlockSymmetryValidator(BaseValidator["CellularSheaf"]):
    """Checks ``S_ij = S_ji^T``, i.e. that the reverse edge carries ``O_ij^T``."""

    def __init__(self, tolerance: float = 1e-12) -> None:
        self._tolerance = tolerance

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "block_symmetry"

    def validate(self, sheaf: CellularSheaf) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        diff = sheaf.S - sheaf.S.T
        worst = float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
        if worst > self._tolerance:
            result.add_error(
                field="S",
                message=f"Block matrix S is not block-symmetric (max deviation {worst:.3e})",
                value=worst,
            )
        return result


class PositiveDegreeValidator(BaseValidator["CellularSheaf"]):
    """Checks that every normalized degree is strictly positive."""

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "positive_degree"

    def validate(self, sheaf: CellularSheaf) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        bad = np.flatnonzero(sheaf.normalized_degrees <= 0.0)
        if bad.size:
            result.add_error(
                field="D",
                message=f"Node {int(bad[0])} has non-positive normalized degree",
                value=float(sheaf.normalized_degrees[bad[0]]),
            )
        return result


class SpectralSignValidator(BaseValidator["CellularSheaf"]):
    """Checks the symmetrized Laplacian: symmetric, spectrum in ``[-2/eps, 0]``."""

    def __init__(self, tolerance: float = 1e-8) -> None:
        self._tolerance = tolerance

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "spectral_sign"

    def validate(self, sheaf: CellularSheaf) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        symmetric = sheaf.symmetrized
        asymmetry = float(np.max(np.abs(symmetric - symmetric.T)))
        if asymmetry > self._tolerance:
            result.add_error(
                field="laplacian",
                message=f"Symmetrized Laplacian is not symmetric ({asymmetry:.3e})",
                value=asymmetry,
            )
            return result

        eigenvalues = scipy.linalg.eigvalsh(symmetric)
        top, bottom = float(eigenvalues[-1]), float(eigenvalues[0])
        if top > self._tolerance:
            result.add_error(
                field="laplacian",
                message=f"Largest Laplacian eigenvalue {top:.3e} is positive",
                value=top,
            )
        floor = -2.0 / sheaf.epsilon - 1e-6
        if bottom < floor:
            result.add_error(
                field="laplacian",
                message=f"Smallest Laplacian eigenvalue {bottom:.6g} is below {floor:.6g}",
                value=bottom,
            )
        return result


class NonAmplifyingValidator(BaseValidator["ResponseAnalysis"]):
    """Flags responses with ``max |h(lambda)| > 1``."""

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "non_amplifying"

    def validate(self, analysis: ResponseAnalysis) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        if not analysis.non_amplifying:
            result.add_error(
                field="max_abs",
                message=f"Frequency response amplifies: max |h| = {analysis.max_abs:.6g} > 1",
                value=analysis.max_abs,
            )
        return result


class LipschitzValidator(BaseValidator["ResponseAnalysis"]):
    """Flags responses whose slope estimate exceeds ``constant``."""

    def __init__(self, constant: float) -> None:
        self._constant = constant

    @property
    def name(self) -> str:
        """Name of this validator."""
        return "lipschitz"

    def validate(self, analysis: ResponseAnalysis) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        if analysis.lipschitz > self._constant:
            result.add_error(
                field="lipschitz",
                message=(
                    f"Frequency response slope {analysis.lipschitz:.6g} exceeds "
                    f"Lipschitz constant {self._constant:.6g}"
                ),
                value=analysis.lipschitz,
            )
        return result


def create_sheaf_validators(include_spectrum: bool = True) -> CompositeValidator[CellularSheaf]:
    """Create the structural validation pipeline for assembled sheaves.

    Args:
        include_spectrum: If True, add the symmetrized-spectrum check
            (a dense eigenvalue solve).

    Returns:
        CompositeValidator over :class:`CellularSheaf`.
    """
    builder: ValidatorPipelineBuilder[CellularSheaf] = ValidatorPipelineBuilder(
        "sheaf_structure"
    )
    builder.add(OrthonormalBasesValidator())
    builder.add(OrthogonalTransportsValidator())
    builder.add(BlockSymmetryValidator())
    builder.add(PositiveDegreeValidator())
    if include_spectrum:
        builder.add(SpectralSignValidator())
    return builder.build()


def create_response_validators(
    lipschitz_constant: float | None = None,
) -> CompositeValidator[ResponseAnalysis]:
    """Create the frequency-response pipeline.

    Args:
        lipschitz_constant: Also check the slope bound when given.
    """
    builder: ValidatorPipelineBuilder[ResponseAnalysis] = ValidatorPipelineBuilder(
        "frequency_response"
    )
    builder.add(NonAmplifyingValidator())
    if lipschitz_constant is not None:
        builder.add(LipschitzValidator(lipschitz_constant))
    return builder.build()
