"""Orthogonal cellular sheaf discretization of a tangent bundle."""

from tangent_bundle_nn.models.sheaf import DENSE_CAP, CellularSheaf, OrthogonalSheaf
from tangent_bundle_nn.sheaf.assembly import (
    assemble_laplacian,
    build_sheaf,
    identity_transports,
    normalize_degrees,
    scalar_graph_laplacian,
    trivial_sheaf,
)
from tangent_bundle_nn.sheaf.io import load_sheaf, save_sheaf
from tangent_bundle_nn.sheaf.kernel import default_epsilon, kernel_weights, symmetric_csr
from tangent_bundle_nn.sheaf.pca import local_pca
from tangent_bundle_nn.sheaf.signals import (
    ambient_inner_product,
    lift_signal,
    sample_field,
    sheaf_inner_product,
)
from tangent_bundle_nn.sheaf.transport import TransportMaps, transport_operators

__all__ = [
    "DENSE_CAP",
    "CellularSheaf",
    "OrthogonalSheaf",
    "TransportMaps",
    "ambient_inner_product",
    "assemble_laplacian",
    "build_sheaf",
    "default_epsilon",
    "identity_transports",
    "kernel_weights",
    "lift_signal",
    "load_sheaf",
    "local_pca",
    "normalize_degrees",
    "sample_field",
    "save_sheaf",
    "scalar_graph_laplacian",
    "sheaf_inner_product",
    "symmetric_csr",
    "transport_operators",
    "trivial_sheaf",
]
