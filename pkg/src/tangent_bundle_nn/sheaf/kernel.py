"""Gaussian kernel weights on the epsilon-graph of a point cloud."""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from tangent_bundle_nn.core.errors import SheafError
from tangent_bundle_nn.models.geometry import PointCloud

logger = logging.getLogger(__name__)


def default_epsilon(n: int, d_hat: int) -> float:
    """Kernel scale schedule ``n^(-2/(d_hat+4))``."""
    if n < 1 or d_hat < 1:
        raise SheafError.build(
            "invalid_count", "default_epsilon needs n >= 1 and d_hat >= 1, got ({n}, {d_hat})",
            n=n, d_hat=d_hat,
        )
    return float(n ** (-2.0 / (d_hat + 4)))


def epsilon_pairs(points: np.ndarray, epsilon: float) -> tuple[np.ndarray, np.ndarray]:
    """Pairs ``i < j`` with ``0 < |x_i - x_j|^2 <= sqrt(epsilon)``.

    Returns:
        ``(edges, sq_dists)``: an ``(m, 2)`` index array sorted by ``(i, j)``
        and the matching squared distances.
    """
    if epsilon <= 0:
        raise SheafError.build(
            "invalid_scale", "epsilon must be > 0, got {epsilon}", epsilon=epsilon
        )
    sqrt_eps = math.sqrt(epsilon)
    # Slightly inflated search radius; the exact support test happens below.
    radius = math.sqrt(sqrt_eps) * (1.0 + 1e-9)
    pairs = cKDTree(points).query_pairs(r=radius, output_type="ndarray")
    pairs = pairs.reshape(-1, 2).astype(np.int64)
    pairs.sort(axis=1)

    diffs = points[pairs[:, 0]] - points[pairs[:, 1]]
    sq_dists = np.einsum("ij,ij->i", diffs, diffs)
    keep = (sq_dists > 0.0) & (sq_dists <= sqrt_eps)
    pairs, sq_dists = pairs[keep], sq_dists[keep]

    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order], sq_dists[order]


def symmetric_csr(n: int, edges: np.ndarray, values: np.ndarray) -> sparse.csr_matrix:
    """Symmetric CSR matrix with ``values`` on ``(i, j)`` and ``(j, i)``."""
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    data = np.concatenate([values, values]).astype(np.float64)
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    matrix.sort_indices()
    return matrix


def upper_edges(weights: sparse.spmatrix) -> tuple[np.ndarray, np.ndarray]:
    """Edges ``i < j`` of a symmetric weight matrix, sorted, with their weights."""
    upper = sparse.triu(weights, k=1).tocoo()
    edges = np.column_stack([upper.row, upper.col]).astype(np.int64)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order], upper.data[order]


def kernel_weights(cloud: PointCloud, epsilon: float) -> sparse.csr_matrix:
    """Weights ``w_ij = exp(-|x_i - x_j|^2 / sqrt(eps)) * 1(0 < |x_i - x_j|^2 <= sqrt(eps))``.

    The kernel decays with distance; the exponent carries a minus sign.

    Raises:
        SheafError: ``isolated_node`` if some point has no neighbor in range.
    """
    edges, sq_dists = epsilon_pairs(cloud.points, epsilon)
    values = np.exp(-sq_dists / math.sqrt(epsilon))
    weights = symmetric_csr(cloud.n, edges, values)

    isolated = np.flatnonzero(np.diff(weights.indptr) == 0)
    if isolated.size:
        raise SheafError.build(
            "isolated_node",
            "Node {node} has no neighbors at epsilon={epsilon} ({count} isolated); "
            "increase epsilon",
            node=int(isolated[0]),
            epsilon=epsilon,
            count=int(isolated.size),
        )
    logger.debug(
        "Kernel graph: n=%d, edges=%d, mean degree=%.1f",
        cloud.n, edges.shape[0], 2.0 * edges.shape[0] / cloud.n,
    )
    return weights
