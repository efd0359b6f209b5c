"""Cellular sheaf models.

``CellularSheaf`` holds a weighted graph with ``d``-dimensional node stalks,
one restriction map per edge ``i < j`` and the assembled block operators.
``OrthogonalSheaf`` is the tangent-bundle specialization built from a point
cloud: it adds the tangent bases and the PCA provenance needed to sample
and lift ambient fields.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import sparse

DENSE_CAP = 4096


class CellularSheaf(BaseModel):
    """Assembled sheaf operators on an ``n``-node graph with ``d``-dim stalks.

    ``S`` holds the blocks ``w_ij / (deg_i deg_j) * O_ij``, ``D`` the block
    diagonal ``ndeg_i * I`` and ``laplacian`` is ``eps^-1 (D^-1 S - I)``,
    stored dense when ``n * d <= dense_cap`` and as CSR otherwise.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(ge=1)
    d_hat: int = Field(ge=1)
    epsilon: float = Field(gt=0)
    weights: sparse.csr_matrix
    edges: np.ndarray
    transports: np.ndarray
    degrees: np.ndarray
    normalized_degrees: np.ndarray
    S: sparse.csr_matrix
    D: sparse.dia_matrix
    laplacian: np.ndarray | sparse.csr_matrix
    dense_cap: int = DENSE_CAP

    @property
    def dim(self) -> int:
        """Total signal length ``n * d_hat``."""
        return self.n * self.d_hat

    @property
    def is_dense(self) -> bool:
        return isinstance(self.laplacian, np.ndarray)

    @property
    def stalk_metric(self) -> np.ndarray:
        """Per-coordinate weights ``ndeg / mean(ndeg)`` of the spectral inner product."""
        metric = self.normalized_degrees / self.normalized_degrees.mean()
        return np.repeat(metric, self.d_hat)

    def dense_laplacian(self) -> np.ndarray:
        if isinstance(self.laplacian, np.ndarray):
            return self.laplacian
        return self.laplacian.toarray()

    @cached_property
    def symmetrized(self) -> np.ndarray:
        """``D^1/2 Delta D^-1/2 = eps^-1 (D^-1/2 S D^-1/2 - I)`` as a dense symmetric matrix."""
        root = np.sqrt(np.repeat(self.normalized_degrees, self.d_hat))
        scaled = self.S.toarray() / np.outer(root, root)
        scaled = 0.5 * (scaled + scaled.T)
        return (scaled - np.eye(self.dim)) / self.epsilon


class OrthogonalSheaf(CellularSheaf):
    """Tangent-bundle sheaf: orthonormal bases ``O_i`` (``n x p x d_hat``)."""

    bases: np.ndarray
    epsilon_pca: float = Field(gt=0)
    gamma: float = Field(gt=0, le=1)
    seed: int | None = None

    @property
    def p(self) -> int:
        return int(self.bases.shape[1])
