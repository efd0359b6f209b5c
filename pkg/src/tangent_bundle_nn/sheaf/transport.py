"""Orthogonal transport maps between neighboring tangent bases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from tangent_bundle_nn.core.errors import SheafError, check_same_length
from tangent_bundle_nn.sheaf.kernel import upper_edges

ALIGNMENT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class TransportMaps:
    """Maps ``O_ij`` for every edge ``i < j``; ``O_ji`` is the transpose."""

    edges: np.ndarray
    maps: np.ndarray

    @property
    def d_hat(self) -> int:
        return int(self.maps.shape[1])

    @property
    def count(self) -> int:
        return int(self.edges.shape[0])

    def block(self, i: int, j: int) -> np.ndarray:
        """``O_ij`` for either orientation of a stored edge."""
        lo, hi = (i, j) if i < j else (j, i)
        hits = np.flatnonzero((self.edges[:, 0] == lo) & (self.edges[:, 1] == hi))
        if hits.size == 0:
            raise SheafError.build(
                "missing_edge", "No transport stored for edge ({i}, {j})", i=i, j=j
            )
        block = self.maps[hits[0]]
        return block if i < j else block.T

    def edge_keys(self, n: int) -> np.ndarray:
        """Linear keys ``i * n + j`` in stored (sorted) order."""
        return self.edges[:, 0] * n + self.edges[:, 1]


def transport_operators(bases: np.ndarray, weights: sparse.spmatrix) -> TransportMaps:
    """Closest orthogonal matrix to ``O_i^T O_j`` on every weighted edge.

    With ``O_i^T O_j = M S V^T`` the map is ``O_ij = M V^T``.

    Raises:
        SheafError: ``rank_deficient_alignment`` when some ``O_i^T O_j`` has a
            singular value below the alignment tolerance.
    """
    check_same_length("bases", weights.shape[0], bases.shape[0], SheafError)
    edges, _ = upper_edges(weights)
    d_hat = bases.shape[2]
    if edges.shape[0] == 0:
        return TransportMaps(edges=edges, maps=np.empty((0, d_hat, d_hat)))

    overlaps = np.einsum("mpa,mpb->mab", bases[edges[:, 0]], bases[edges[:, 1]])
    left, singular, right_t = np.linalg.svd(overlaps)
    smallest = singular.min(axis=1)
    bad = np.flatnonzero(smallest < ALIGNMENT_TOLERANCE)
    if bad.size:
        i, j = (int(v) for v in edges[bad[0]])
        raise SheafError.build(
            "rank_deficient_alignment",
            "Tangent bases at nodes {i} and {j} are nearly orthogonal "
            "(smallest singular value {sigma}); reduce epsilon",
            i=i, j=j, node=i, sigma=float(smallest[bad[0]]),
        )
    return TransportMaps(edges=edges, maps=left @ right_t)
