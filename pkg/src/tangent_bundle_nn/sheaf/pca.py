"""Local PCA estimates of tangent bases and intrinsic dimension."""

from __future__ import annotations

import logging
import math

import numpy as np

from tangent_bundle_nn.core.errors import SheafError
from tangent_bundle_nn.models.geometry import PointCloud
from tangent_bundle_nn.sheaf.kernel import epsilon_pairs, symmetric_csr

logger = logging.getLogger(__name__)

DEGENERATE_SINGULAR_VALUE = 1e-14


def _local_dimension(singular_values: np.ndarray, gamma: float) -> int:
    energy = singular_values**2
    explained = np.cumsum(energy) / energy.sum()
    return int(np.argmax(explained >= gamma - 1e-12)) + 1


def local_pca(
    cloud: PointCloud,
    epsilon_pca: float,
    gamma: float = 0.9,
    d_hat: int | None = None,
) -> tuple[np.ndarray, int]:
    """Estimate an orthonormal tangent basis at every point.

    For each point the neighbor differences ``x_j - x_i`` (same support rule
    as the kernel weights, at scale ``epsilon_pca``) are centered on their
    kernel-weighted mean, scaled by ``sqrt(w_ij)`` and decomposed by SVD.
    The local dimension is the smallest ``k`` whose cumulative squared
    singular values explain a ``gamma`` fraction; ``d_hat`` is the majority
    vote (ties go to the smaller dimension) unless given explicitly.

    Args:
        cloud: Input points.
        epsilon_pca: Kernel scale of the PCA neighborhoods.
        gamma: Explained-variance threshold.
        d_hat: Force the intrinsic dimension instead of voting.

    Returns:
        ``(bases, d_hat)`` where ``bases`` has shape ``(n, p, d_hat)``.

    Raises:
        SheafError: ``insufficient_neighbors`` or ``degenerate_spectrum``.
    """
    if not 0.0 < gamma <= 1.0:
        raise SheafError.build("invalid_threshold", "gamma must be in (0, 1], got {gamma}",
                               gamma=gamma)
    points = cloud.points
    n, p = points.shape
    edges, sq_dists = epsilon_pairs(points, epsilon_pca)
    neighborhoods = symmetric_csr(n, edges, np.exp(-sq_dists / math.sqrt(epsilon_pca)))

    left_vectors: list[np.ndarray] = []
    local_dims = np.zeros(n, dtype=np.int64)
    # centered differences of k neighbors span at most k - 1 directions
    counts = np.diff(neighborhoods.indptr)
    spans = np.minimum(counts - 1, p)
    for i in range(n):
        start, end = neighborhoods.indptr[i], neighborhoods.indptr[i + 1]
        nbrs = neighborhoods.indices[start:end]
        if nbrs.size < 2:
            raise SheafError.build(
                "insufficient_neighbors",
                "Node {node} has {count} PCA neighbors, needs at least 2; increase epsilon_pca",
                node=i, count=int(nbrs.size),
            )
        weights = neighborhoods.data[start:end]
        differences = points[nbrs] - points[i]
        differences -= (weights @ differences) / weights.sum()
        scaled = differences.T * np.sqrt(weights)
        u, s, _ = np.linalg.svd(scaled, full_matrices=False)
        if s[0] < DEGENERATE_SINGULAR_VALUE:
            raise SheafError.build(
                "degenerate_spectrum",
                "Node {node}: all local singular values are below {threshold}",
                node=i, threshold=DEGENERATE_SINGULAR_VALUE,
            )
        local_dims[i] = _local_dimension(s, gamma)
        left_vectors.append(u)

    if d_hat is None:
        # argmax returns the first maximum, i.e. the smaller dimension on ties
        d_hat = int(np.argmax(np.bincount(local_dims)))
    logger.debug(
        "Local PCA: d_hat=%d, local dims histogram=%s", d_hat, np.bincount(local_dims).tolist()
    )

    bases = np.empty((n, p, d_hat))
    for i, u in enumerate(left_vectors):
        if spans[i] < d_hat:
            raise SheafError.build(
                "insufficient_neighbors",
                "Node {node} has {count} PCA neighbors but d_hat={d_hat}; increase epsilon_pca",
                node=i, count=int(counts[i]), d_hat=d_hat,
            )
        bases[i] = u[:, :d_hat]
    return bases, d_hat
