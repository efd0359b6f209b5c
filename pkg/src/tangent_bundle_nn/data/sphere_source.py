from __future__ import annotations

from tangent_bundle_nn.data.base import BaseCloudSource
from tangent_bundle_nn.geometry.sampling import sample_sphere
from tangent_bundle_nn.models.geometry import PointCloud


class SphereCloudSource(BaseCloudSource):
    """Uniform samples on the unit 2-sphere."""

    def __init__(self, n: int, seed: int = 0) -> None:
        """Initialize the sphere source.

        Args:
            n: Number of points.
            seed: RNG seed for the sampler.
        """
        self._n = n
        self._seed = seed
        super().__init__()

    @property
    def name(self) -> str:
        return f"sphere:{self._n}"

    def _load_impl(self) -> PointCloud:
        return sample_sphere(self._n, self._seed)
