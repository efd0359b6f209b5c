"""CSV persistence for point clouds and ambient fields.

One row per point with a header: ``x1..xp`` for coordinates, followed by
``v1..vp`` for field values. Floats are written with 17 significant digits
so a write/read cycle is exact.
"""

from __future__ import annotations

import csv
from collections.abc import Iterator
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from tangent_bundle_nn.core.errors import GeometryError, error_from_validation
from tangent_bundle_nn.data.base import BaseCloudSource
from tangent_bundle_nn.models.enums import ManifoldTag
from tangent_bundle_nn.models.geometry import AmbientField, PointCloud

FLOAT_FORMAT = ".17g"


def format_float(value: float) -> str:
    """Render a float with 17 significant digits."""
    return format(float(value), FLOAT_FORMAT)


def _iter_csv_rows(path: Path) -> Iterator[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as f:
        yield from csv.DictReader(f)


def _columns(prefix: str, header: list[str]) -> list[str]:
    cols = [h for h in header if h.startswith(prefix) and h[len(prefix) :].isdigit()]
    return sorted(cols, key=lambda h: int(h[len(prefix) :]))


def _read_matrix(path: Path, prefix: str) -> np.ndarray:
    rows = list(_iter_csv_rows(path))
    if not rows:
        raise GeometryError.build("invalid_count", "CSV file {path} has no rows", path=str(path))
    cols = _columns(prefix, list(rows[0].keys()))
    if not cols:
        raise GeometryError.build(
            "dimension_mismatch", "CSV file {path} has no '{prefix}' columns",
            path=str(path), prefix=prefix,
        )
    return np.array([[float(row[c]) for c in cols] for row in rows], dtype=np.float64)


def write_cloud_csv(cloud: PointCloud, path: str | Path) -> Path:
    """Write ``cloud`` as ``x1..xp`` columns."""
    path = Path(path)
    header = [f"x{k + 1}" for k in range(cloud.p)]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_float(v) for v in row] for row in cloud.points)
    return path


def write_field_csv(cloud: PointCloud, field: AmbientField, path: str | Path) -> Path:
    """Write base points and field vectors as ``x1..xp, v1..vp`` columns."""
    path = Path(path)
    if cloud.points.shape != field.values.shape:
        raise GeometryError.build(
            "dimension_mismatch", "Field shape {field_shape} does not match cloud {cloud_shape}",
            field_shape=field.values.shape, cloud_shape=cloud.points.shape,
        )
    header = [f"x{k + 1}" for k in range(cloud.p)] + [f"v{k + 1}" for k in range(field.p)]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for point, vector in zip(cloud.points, field.values, strict=True):
            writer.writerow([format_float(v) for v in (*point, *vector)])
    return path


def read_field_csv(path: str | Path) -> tuple[PointCloud, AmbientField]:
    """Load a cloud and its field written by :func:`write_field_csv`."""
    path = Path(path)
    try:
        cloud = PointCloud(points=_read_matrix(path, "x"), manifold_tag=ManifoldTag.CUSTOM)
        field = AmbientField(values=_read_matrix(path, "v"))
    except ValidationError as exc:
        raise error_from_validation(exc, GeometryError) from exc
    return cloud, field


class CSVCloudSource(BaseCloudSource):
    """Custom point cloud loaded from a CSV file with ``x1..xp`` columns."""

    def __init__(self, csv_path: str | Path, seed: int | None = None) -> None:
        """Initialize CSV cloud source.

        Args:
            csv_path: Path to the CSV file.
            seed: Optional provenance seed recorded on the cloud.
        """
        self._csv_path = Path(csv_path)
        self._seed = seed
        super().__init__()

    @property
    def name(self) -> str:
        return f"csv:{self._csv_path}"

    def _load_impl(self) -> PointCloud:
        try:
            return PointCloud(
                points=_read_matrix(self._csv_path, "x"),
                seed=self._seed,
                manifold_tag=ManifoldTag.CUSTOM,
            )
        except ValidationError as exc:
            raise error_from_validation(exc, GeometryError) from exc
