"""Assembly of the sheaf Laplacian and the end-to-end discretization pipeline."""

from __future__ import annotations

import logging
import warnings
from typing import Any

import numpy as np
from scipy import sparse

from tangent_bundle_nn.core.errors import SheafError, check_same_length
from tangent_bundle_nn.models.geometry import PointCloud
from tangent_bundle_nn.models.sheaf import DENSE_CAP, CellularSheaf, OrthogonalSheaf
from tangent_bundle_nn.sheaf.kernel import default_epsilon, kernel_weights, upper_edges
from tangent_bundle_nn.sheaf.pca import local_pca
from tangent_bundle_nn.sheaf.transport import TransportMaps, transport_operators

logger = logging.getLogger(__name__)


def _entry_rows(matrix: sparse.csr_matrix) -> np.ndarray:
    return np.repeat(np.arange(matrix.shape[0]), np.diff(matrix.indptr))


def normalize_degrees(
    weights: sparse.csr_matrix,
) -> tuple[np.ndarray, sparse.csr_matrix, np.ndarray]:
    """Degrees, doubly normalized weights and normalized degrees.

    Returns:
        ``(deg, wn, ndeg)`` with ``deg_i = sum_j w_ij``,
        ``wn_ij = w_ij / (deg_i deg_j)`` and ``ndeg_i = sum_j wn_ij``.

    Raises:
        SheafError: ``zero_degree`` for a node with no weight.
    """
    degrees = np.asarray(weights.sum(axis=1)).ravel()
    zero = np.flatnonzero(degrees <= 0.0)
    if zero.size:
        raise SheafError.build(
            "zero_degree", "Node {node} has zero degree; increase epsilon", node=int(zero[0])
        )
    normalized = weights.copy()
    normalized.data = weights.data / (degrees[_entry_rows(weights)] * degrees[weights.indices])
    normalized_degrees = np.asarray(normalized.sum(axis=1)).ravel()
    return degrees, normalized, normalized_degrees


def _row_divide(matrix: sparse.csr_matrix, values: np.ndarray) -> sparse.csr_matrix:
    scaled = matrix.copy()
    scaled.data = matrix.data / values[_entry_rows(matrix)]
    return scaled


def _finish_laplacian(
    random_walk: sparse.csr_matrix, epsilon: float, dense_cap: int
) -> np.ndarray | sparse.csr_matrix:
    size = random_walk.shape[0]
    if size <= dense_cap:
        return (random_walk.toarray() - np.eye(size)) / epsilon
    return ((random_walk - sparse.identity(size, format="csr")) / epsilon).tocsr()


def _edge_blocks(
    normalized: sparse.csr_matrix, transports: TransportMaps
) -> np.ndarray:
    """``wn_ij * O_ij`` for every stored entry of ``normalized`` in CSR order."""
    n = normalized.shape[0]
    rows = _entry_rows(normalized)
    cols = normalized.indices
    lower = rows > cols
    lo = np.where(lower, cols, rows)
    hi = np.where(lower, rows, cols)

    keys = transports.edge_keys(n)
    index = np.searchsorted(keys, lo * n + hi)
    found = (index < keys.size) & (keys[np.minimum(index, keys.size - 1)] == lo * n + hi)
    if not np.all(found):
        missing = int(np.flatnonzero(~found)[0])
        raise SheafError.build(
            "missing_edge",
            "Weighted edge ({i}, {j}) has no transport map",
            i=int(rows[missing]), j=int(cols[missing]),
        )

    maps = transports.maps[index]
    maps = np.where(lower[:, None, None], maps.transpose(0, 2, 1), maps)
    return normalized.data[:, None, None] * maps


def assemble_laplacian(
    weights: sparse.csr_matrix,
    bases: np.ndarray | None,
    transports: TransportMaps,
    epsilon: float,
    *,
    dense_cap: int = DENSE_CAP,
    **provenance: Any,
) -> CellularSheaf:
    """Build ``S``, ``D`` and ``Delta = eps^-1 (D^-1 S - I)``.

    Passing ``bases`` yields an :class:`OrthogonalSheaf` (``provenance`` then
    supplies ``epsilon_pca``, ``gamma`` and ``seed``); ``bases=None`` yields a
    plain :class:`CellularSheaf`.
    """
    n = weights.shape[0]
    if bases is not None:
        check_same_length("bases", n, bases.shape[0], SheafError)
        check_same_length("d_hat", bases.shape[2], transports.d_hat, SheafError)
    d_hat = transports.d_hat

    degrees, normalized, normalized_degrees = normalize_degrees(weights)
    blocks = _edge_blocks(normalized, transports)
    block_matrix = sparse.bsr_matrix(
        (blocks, normalized.indices, normalized.indptr),
        shape=(n * d_hat, n * d_hat),
        blocksize=(d_hat, d_hat),
    ).tocsr()
    block_matrix.sort_indices()

    stalk_degrees = np.repeat(normalized_degrees, d_hat)
    laplacian = _finish_laplacian(
        _row_divide(block_matrix, stalk_degrees), epsilon, dense_cap
    )
    logger.debug(
        "Assembled Laplacian: n=%d, d_hat=%d, nnz(S)=%d, %s storage",
        n, d_hat, block_matrix.nnz, "dense" if isinstance(laplacian, np.ndarray) else "sparse",
    )

    fields: dict[str, Any] = {
        "n": n,
        "d_hat": d_hat,
        "epsilon": epsilon,
        "weights": weights,
        "edges": transports.edges,
        "transports": transports.maps,
        "degrees": degrees,
        "normalized_degrees": normalized_degrees,
        "S": block_matrix,
        "D": sparse.diags(stalk_degrees),
        "laplacian": laplacian,
        "dense_cap": dense_cap,
    }
    if bases is None:
        return CellularSheaf(**fields)
    return OrthogonalSheaf(bases=bases, **fields, **provenance)


def identity_transports(weights: sparse.csr_matrix, d: int = 1) -> TransportMaps:
    """Identity restriction maps on every edge of ``weights``."""
    edges, _ = upper_edges(weights)
    maps = np.broadcast_to(np.eye(d), (edges.shape[0], d, d)).copy()
    return TransportMaps(edges=edges, maps=maps)


def trivial_sheaf(
    weights: sparse.csr_matrix, epsilon: float, *, dense_cap: int = DENSE_CAP
) -> CellularSheaf:
    """Scalar sheaf: one-dimensional stalks and identity restriction maps."""
    return assemble_laplacian(
        weights, None, identity_transports(weights), epsilon, dense_cap=dense_cap
    )


def scalar_graph_laplacian(
    weights: sparse.csr_matrix, epsilon: float, *, dense_cap: int = DENSE_CAP
) -> np.ndarray | sparse.csr_matrix:
    """Normalized scalar graph Laplacian ``eps^-1 (D^-1 W_n - I)`` without any sheaf data."""
    _, normalized, normalized_degrees = normalize_degrees(weights)
    normalized.sort_indices()
    return _finish_laplacian(
        _row_divide(normalized, normalized_degrees), epsilon, dense_cap
    )


def build_sheaf(
    cloud: PointCloud,
    epsilon: float | None = None,
    epsilon_pca: float | None = None,
    gamma: float = 0.9,
    d_hat: int | None = None,
    *,
    dense_cap: int = DENSE_CAP,
) -> OrthogonalSheaf:
    """Discretize the tangent bundle of ``cloud``.

    Runs kernel weights, local PCA, transports and assembly. With automatic
    ``epsilon`` the schedule ``n^(-2/(d_hat+4))`` first assumes a hypersurface
    (``d_hat = p - 1``) and is recomputed once if local PCA disagrees.
    ``epsilon_pca`` defaults to ``epsilon``.

    Example:
        >>> from tangent_bundle_nn.geometry import sample_sphere
        >>> sheaf = build_sheaf(sample_sphere(200, seed=0))
        >>> sheaf.d_hat
        2
    """
    guess = d_hat if d_hat is not None else max(cloud.p - 1, 1)
    eps = epsilon if epsilon is not None else default_epsilon(cloud.n, guess)
    eps_pca = epsilon_pca if epsilon_pca is not None else eps
    bases, estimated = local_pca(cloud, eps_pca, gamma, d_hat=d_hat)

    if epsilon is None and estimated != guess:
        logger.debug("d_hat estimate %d differs from guess %d; recomputing epsilon", estimated,
                     guess)
        eps = default_epsilon(cloud.n, estimated)
        if epsilon_pca is None:
            eps_pca = eps
        bases, estimated = local_pca(cloud, eps_pca, gamma, d_hat=estimated)
    elif epsilon is not None and epsilon < 0.1 * default_epsilon(cloud.n, estimated):
        warnings.warn(
            f"epsilon={epsilon:.3g} is more than 10x below the default schedule "
            f"{default_epsilon(cloud.n, estimated):.3g}; expect isolated nodes",
            RuntimeWarning,
            stacklevel=2,
        )

    weights = kernel_weights(cloud, eps)
    transports = transport_operators(bases, weights)
    sheaf = assemble_laplacian(
        weights, bases, transports, eps,
        dense_cap=dense_cap, epsilon_pca=eps_pca, gamma=gamma, seed=cloud.seed,
    )
    logger.debug("Built sheaf: n=%d, d_hat=%d, epsilon=%.4g", cloud.n, estimated, eps)
    assert isinstance(sheaf, OrthogonalSheaf)
    return sheaf
