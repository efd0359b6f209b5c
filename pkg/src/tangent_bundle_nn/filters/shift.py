"""The sheaf shift operator ``P = exp(Delta)``.

Two builders are registered with :class:`ShiftBuilderFactory`: ``eig``
diagonalizes the symmetrized Laplacian and ``scaling-squaring`` calls
``scipy.linalg.expm`` on the dense Laplacian.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from typing import Any, ClassVar

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict
from scipy import sparse

from tangent_bundle_nn.core.errors import FilterError
from tangent_bundle_nn.core.factory import PluginFactory
from tangent_bundle_nn.models.enums import ShiftMethod
from tangent_bundle_nn.models.sheaf import DENSE_CAP, CellularSheaf
from tangent_bundle_nn.protocols import ShiftBuilderProtocol

logger = logging.getLogger(__name__)


class ShiftOperator(BaseModel):
    """Dense ``P = exp(Delta)`` with its provenance and the stalk metric."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    method: ShiftMethod
    metric: np.ndarray
    stalk_dim: int = 1

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_nodes(self) -> int:
        return self.dim // self.stalk_dim

    def apply(self, signal: np.ndarray) -> np.ndarray:
        return self.matrix @ signal

    def apply_transpose(self, signal: np.ndarray) -> np.ndarray:
        return self.matrix.T @ signal


class EigShiftBuilder:
    """``P = D^-1/2 U diag(exp(mu)) U^T D^1/2`` from ``D^1/2 Delta D^-1/2 = U diag(mu) U^T``."""

    @property
    def name(self) -> str:
        return ShiftMethod.EIG.value

    def build(self, laplacian: np.ndarray | sparse.spmatrix, metric: np.ndarray) -> np.ndarray:
        dense = laplacian.toarray() if sparse.issparse(laplacian) else np.asarray(laplacian)
        root = np.sqrt(metric)
        symmetric = root[:, None] * dense / root[None, :]
        symmetric = 0.5 * (symmetric + symmetric.T)
        try:
            mu, vectors = scipy.linalg.eigh(symmetric)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise FilterError.from_exception("convergence_failure", e) from e
        # exp(mu) with mu <= 0; very negative mu underflows to 0.
        core = (vectors * np.exp(mu)) @ vectors.T
        return core * (root[None, :] / root[:, None])


class ScalingSquaringShiftBuilder:
    """Pade scaling-and-squaring matrix exponential of the dense Laplacian."""

    @property
    def name(self) -> str:
        return ShiftMethod.SCALING_SQUARING.value

    def build(self, laplacian: np.ndarray | sparse.spmatrix, metric: np.ndarray) -> np.ndarray:
        dense = laplacian.toarray() if sparse.issparse(laplacian) else np.asarray(laplacian)
        return np.asarray(scipy.linalg.expm(dense))


class ShiftBuilderFactory(PluginFactory[ShiftBuilderProtocol]):
    """Factory for shift operator builders.

    Example:
        >>> builder = ShiftBuilderFactory.create("scaling-squaring")
        >>> ShiftBuilderFactory.available_types()
        ['eig', 'scaling-squaring']
    """

    _registry: ClassVar[dict[str, type[Any]]] = {}
    _default_type: ClassVar[str] = ShiftMethod.EIG.value
    _entity_name: ClassVar[str] = "shift method"

    @classmethod
    def _default_impls(cls) -> Mapping[str, type[Any]]:
        return {
            ShiftMethod.EIG.value: EigShiftBuilder,
            ShiftMethod.SCALING_SQUARING.value: ScalingSquaringShiftBuilder,
        }


def shift_from_laplacian(
    laplacian: np.ndarray | sparse.spmatrix,
    metric: np.ndarray | None = None,
    method: ShiftMethod | str = ShiftMethod.EIG,
    *,
    stalk_dim: int = 1,
    dense_cap: int = DENSE_CAP,
) -> ShiftOperator:
    """Shift operator of a raw Laplacian.

    Args:
        laplacian: Square operator, self-adjoint in the ``metric``-weighted product.
        metric: Positive per-coordinate weights; ``None`` means the operator
            is symmetric as given.
        method: ``eig`` or ``scaling-squaring``.
        stalk_dim: Stalk dimension, used to count nodes.
        dense_cap: Largest dimension handled densely.

    Raises:
        FilterError: ``dimension_overflow`` above ``dense_cap``.
    """
    size = laplacian.shape[0]
    if laplacian.shape != (size, size):
        raise FilterError.build(
            "dimension_mismatch", "Laplacian must be square, got {shape}", shape=laplacian.shape
        )
    if size > dense_cap:
        raise FilterError.build(
            "dimension_overflow",
            "Shift operator limited to dimension {cap}, got {size}",
            cap=dense_cap, size=size,
        )
    weights = np.ones(size) if metric is None else np.asarray(metric, dtype=np.float64)
    method = ShiftMethod(method)
    builder = ShiftBuilderFactory.create(method)
    logger.debug("Building shift operator: method=%s, size=%d", method.value, size)
    return ShiftOperator(
        matrix=builder.build(laplacian, weights),
        method=method,
        metric=weights,
        stalk_dim=stalk_dim,
    )


def shift_operator(
    sheaf: CellularSheaf, method: ShiftMethod | str = ShiftMethod.EIG
) -> ShiftOperator:
    """``exp(Delta)`` of an assembled sheaf."""
    return shift_from_laplacian(
        sheaf.laplacian,
        sheaf.stalk_metric,
        method,
        stalk_dim=sheaf.d_hat,
        dense_cap=sheaf.dense_cap,
    )
