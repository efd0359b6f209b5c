"""Point cloud sources and CSV persistence."""

from __future__ import annotations

from tangent_bundle_nn.data.base import BaseCloudSource
from tangent_bundle_nn.data.csv_source import (
    CSVCloudSource,
    format_float,
    read_field_csv,
    write_cloud_csv,
    write_field_csv,
)
from tangent_bundle_nn.data.factory import CloudSourceFactory
from tangent_bundle_nn.data.sphere_source import SphereCloudSource

__all__ = [
    "BaseCloudSource",
    "CSVCloudSource",
    "CloudSourceFactory",
    "SphereCloudSource",
    "format_float",
    "read_field_csv",
    "write_cloud_csv",
    "write_field_csv",
]
