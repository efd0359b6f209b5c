from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    import numpy as np
    from scipy import sparse

    from tangent_bundle_nn.models.geometry import PointCloud


@runtime_checkable
class CloudSourceProtocol(Protocol):
    """Protocol for point cloud sources.

    Implementations produce a ``PointCloud`` from some backing store
    (an analytic sampler, a CSV file, ...).
    """

    def load(self) -> PointCloud:
        """Return the point cloud, loading it on first access."""
        ...

    @property
    def name(self) -> str:
        """Name of this source for logs and metadata."""
        ...


@runtime_checkable
class ShiftBuilderProtocol(Protocol):
    """Protocol for ways of computing ``exp(Delta_n)``.

    Implementations receive the (dense or sparse) Laplacian together with the
    stalk metric ``m`` that makes it self-adjoint and return the dense shift
    matrix.
    """

    def build(self, laplacian: np.ndarray | sparse.spmatrix, metric: np.ndarray) -> np.ndarray:
        """Compute the dense shift matrix."""
        ...

    @property
    def name(self) -> str:
        """Method tag recorded as the operator's provenance."""
        ...


@runtime_checkable
class NonlinearityProtocol(Protocol):
    """Protocol for entrywise activations with an analytic derivative."""

    def __call__(self, values: np.ndarray) -> np.ndarray:
        """Apply the activation entrywise."""
        ...

    def derivative(self, values: np.ndarray) -> np.ndarray:
        """Entrywise derivative evaluated at the pre-activation ``values``."""
        ...

    @property
    def name(self) -> str:
        """Tag stored in checkpoints."""
        ...


@runtime_checkable
class FrequencyResponseProtocol(Protocol):
    """Anything that evaluates a frequency response on eigenvalues."""

    def __call__(self, lam: np.ndarray) -> np.ndarray:
        """Evaluate the response at each eigenvalue."""
        ...
