"""Point clouds on the unit 2-sphere, analytic tangent fields and noise."""

from __future__ import annotations

import logging

import numpy as np

from tangent_bundle_nn.core.errors import GeometryError
from tangent_bundle_nn.models.enums import ManifoldTag
from tangent_bundle_nn.models.geometry import AmbientField, PointCloud, has_duplicates

logger = logging.getLogger(__name__)

_MAX_RESAMPLE_ROUNDS = 16


def _normal_directions(rng: np.random.Generator, count: int) -> np.ndarray:
    draws = rng.standard_normal((count, 3))
    return draws / np.linalg.norm(draws, axis=1, keepdims=True)


def sample_sphere(n: int, seed: int) -> PointCloud:
    """Draw ``n`` points uniformly on the unit sphere in ``R^3``.

    Normalized i.i.d. standard-normal triples are exactly uniform. Coincident
    points are redrawn from the same stream, so the result stays a pure
    function of ``(n, seed)``.

    Raises:
        GeometryError: ``invalid_count`` when ``n < 1``.
    """
    if n < 1:
        raise GeometryError.build("invalid_count", "n must be >= 1, got {n}", n=n)

    rng = np.random.default_rng(seed)
    points = _normal_directions(rng, n)

    for _ in range(_MAX_RESAMPLE_ROUNDS):
        if not has_duplicates(points):
            break
        _, first = np.unique(points, axis=0, return_index=True)
        repeated = np.setdiff1d(np.arange(n), first)
        logger.warning("Resampling %d duplicate sphere points (seed=%s)", repeated.size, seed)
        points[repeated] = _normal_directions(rng, repeated.size)

    return PointCloud(points=points, seed=seed, manifold_tag=ManifoldTag.SPHERE2)


def rotational_field(cloud: PointCloud) -> AmbientField:
    """The rotation field ``iF(x, y, z) = (-y, x, 0)`` evaluated on the cloud."""
    if cloud.p != 3:
        raise GeometryError.build(
            "dimension_mismatch",
            "rotational_field needs ambient dimension 3, got {p}",
            p=cloud.p,
        )
    x, y = cloud.points[:, 0], cloud.points[:, 1]
    return AmbientField(values=np.column_stack([-y, x, np.zeros_like(x)]))


def add_awgn(field: AmbientField, tau: float, seed: int) -> AmbientField:
    """Perturb every ambient coordinate with i.i.d. ``N(0, tau^2)`` noise."""
    if tau < 0:
        raise GeometryError.build("invalid_noise", "tau must be >= 0, got {tau}", tau=tau)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(field.values.shape)
    return AmbientField(values=field.values + tau * noise)
