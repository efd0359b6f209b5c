"""Point cloud and ambient vector field models."""

from __future__ import annotations

from typing import Any, Self

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.spatial import cKDTree

from tangent_bundle_nn.core.errors import GeometryError
from tangent_bundle_nn.models.enums import ManifoldTag

SPHERE_NORM_TOL = 1e-12

FloatArray = npt.NDArray[np.float64]


def _frozen_matrix(value: Any, name: str) -> FloatArray:
    array = np.array(value, dtype=np.float64)
    if array.ndim != 2:
        raise GeometryError.build(
            "dimension_mismatch", "{field} must be a 2-D matrix, got {ndim} dims",
            field=name, ndim=array.ndim,
        )
    if not np.all(np.isfinite(array)):
        raise GeometryError.build("non_finite", "{field} contains non-finite entries", field=name)
    array.setflags(write=False)
    return array


def has_duplicates(points: FloatArray) -> bool:
    """True when two rows coincide exactly."""
    if points.shape[0] < 2:
        return False
    return bool(cKDTree(points).query_pairs(r=0.0))


class PointCloud(BaseModel):
    """``n`` points in ambient ``R^p`` with their sampling provenance.

    ``points`` is stored read-only. Sphere clouds are checked for unit norm,
    and no cloud may contain duplicate points (the kernel support excludes
    zero distance and local PCA degenerates on repeated points).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray
    seed: int | None = Field(default=None, description="RNG seed the cloud was drawn with")
    manifold_tag: ManifoldTag = ManifoldTag.CUSTOM

    @field_validator("points", mode="before")
    @classmethod
    def _coerce_points(cls, value: Any) -> FloatArray:
        return _frozen_matrix(value, "points")

    @model_validator(mode="after")
    def _check_invariants(self) -> Self:
        n, p = self.points.shape
        if n < 1 or p < 1:
            raise GeometryError.build(
                "invalid_count",
                "Point cloud must have n >= 1 and p >= 1, got ({n}, {p})",
                n=n,
                p=p,
            )
        if self.manifold_tag is ManifoldTag.SPHERE2:
            worst = float(np.max(np.abs(np.linalg.norm(self.points, axis=1) - 1.0)))
            if worst > SPHERE_NORM_TOL:
                raise GeometryError.build(
                    "not_on_sphere", "Sphere cloud rows deviate from unit norm by {worst}",
                    worst=worst,
                )
        if has_duplicates(self.points):
            raise GeometryError.build("duplicate_points", "Point cloud contains duplicate points")
        return self

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def p(self) -> int:
        return int(self.points.shape[1])

    def subset(self, count: int) -> PointCloud:
        """First ``count`` points, keeping provenance (nested sampling)."""
        return PointCloud(
            points=self.points[:count], seed=self.seed, manifold_tag=self.manifold_tag
        )


class AmbientField(BaseModel):
    """Embedded tangent vectors ``iF(x_i)``, one row per point."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, value: Any) -> FloatArray:
        return _frozen_matrix(value, "values")

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def p(self) -> int:
        return int(self.values.shape[1])

    def tangency_residual(self, cloud: PointCloud) -> float:
        """Largest ``|<iF(x_i), x_i>|`` over the cloud (sphere tangency check)."""
        if cloud.points.shape != self.values.shape:
            raise GeometryError.build(
                "dimension_mismatch",
                "Field shape {field_shape} does not match cloud {cloud_shape}",
                field_shape=self.values.shape, cloud_shape=cloud.points.shape,
            )
        return float(np.max(np.abs(np.einsum("ij,ij->i", self.values, cloud.points))))
