from __future__ import annotations

from collections.abc import Mapping
from typing import Any, ClassVar

from tangent_bundle_nn.core.factory import PluginFactory
from tangent_bundle_nn.protocols import CloudSourceProtocol


class CloudSourceFactory(PluginFactory[CloudSourceProtocol]):
    """Factory for creating point cloud sources.

    Example:
        >>> source = CloudSourceFactory.create("sphere", n=200, seed=7)
        >>> source = CloudSourceFactory.create("csv", csv_path="cloud.csv")

        # Register a custom source
        >>> CloudSourceFactory.register("torus", TorusCloudSource)
    """

    _registry: ClassVar[dict[str, type[CloudSourceProtocol]]] = {}
    _default_type: ClassVar[str] = "sphere"
    _entity_name: ClassVar[str] = "cloud source"

    @classmethod
    def _default_impls(cls) -> Mapping[str, type[Any]]:
        from tangent_bundle_nn.data.csv_source import CSVCloudSource
        from tangent_bundle_nn.data.sphere_source import SphereCloudSource

        return {"sphere": SphereCloudSource, "csv": CSVCloudSource}

    @classmethod
    def from_spec(cls, spec: str, seed: int = 0, **kwargs: Any) -> CloudSourceProtocol:
        """Create a source from a CLI input string.

        ``sphere:<n>`` samples the sphere; anything else is a CSV path.
        """
        kind, _, arg = spec.partition(":")
        if kind == "sphere" and arg:
            return cls.create("sphere", n=int(arg), seed=seed, **kwargs)
        return cls.create("csv", csv_path=spec, seed=seed, **kwargs)
