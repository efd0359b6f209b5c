from __future__ import annotations

from abc import ABC, abstractmethod
from functools import lru_cache

from tangent_bundle_nn.models.geometry import PointCloud


class BaseCloudSource(ABC):
    """Abstract base class for point cloud sources.

    Provides common caching logic: the cloud is produced once per source
    instance and reused afterwards.
    """

    def __init__(self) -> None:
        self._setup_cache()

    def _setup_cache(self) -> None:
        """Set up the single-entry cache for the loaded cloud."""
        self._cached_load = lru_cache(maxsize=1)(self._load_impl)

    @property
    @abstractmethod
    def name(self) -> str:
        """Name of this source implementation."""
        ...

    @abstractmethod
    def _load_impl(self) -> PointCloud:
        """Produce the point cloud from the underlying source."""
        ...

    def load(self) -> PointCloud:
        """Return the point cloud, producing it on first access."""
        return self._cached_load()

    def clear_cache(self) -> None:
        """Forget the cached cloud."""
        self._cached_load.cache_clear()
