"""Sampling ambient fields onto stalks and lifting sheaf signals back."""

from __future__ import annotations

import numpy as np

from tangent_bundle_nn.core.errors import SheafError, check_same_length
from tangent_bundle_nn.models.geometry import AmbientField
from tangent_bundle_nn.models.sheaf import OrthogonalSheaf


def sample_field(sheaf: OrthogonalSheaf, field: AmbientField) -> np.ndarray:
    """Stalk coordinates ``O_i^T iF(x_i)`` stacked into a length ``n * d_hat`` vector."""
    check_same_length("field rows", sheaf.n, field.n, SheafError)
    check_same_length("field columns", sheaf.p, field.p, SheafError)
    return np.einsum("ipd,ip->id", sheaf.bases, field.values).reshape(-1)


def lift_signal(sheaf: OrthogonalSheaf, signal: np.ndarray) -> AmbientField:
    """Ambient field with row ``i`` equal to ``O_i`` times stalk block ``i``."""
    signal = np.asarray(signal, dtype=np.float64)
    if signal.ndim != 1:
        raise SheafError.build(
            "dimension_mismatch", "lift_signal takes a single-feature signal, got shape {shape}",
            shape=signal.shape,
        )
    check_same_length("signal", sheaf.dim, signal.size, SheafError)
    blocks = signal.reshape(sheaf.n, sheaf.d_hat)
    return AmbientField(values=np.einsum("ipd,id->ip", sheaf.bases, blocks))


def sheaf_inner_product(a: np.ndarray, b: np.ndarray, n_nodes: int) -> float:
    """``(1/n) sum_i <a_i, b_i>`` over stalk blocks."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise SheafError.build(
            "dimension_mismatch", "Signal shapes differ: {left} vs {right}",
            left=a.shape, right=b.shape,
        )
    return float(np.sum(a * b) / n_nodes)


def ambient_inner_product(u: AmbientField, v: AmbientField) -> float:
    """Empirical ``(1/n) sum_i <u(x_i), v(x_i)>`` of two ambient fields."""
    if u.values.shape != v.values.shape:
        raise SheafError.build(
            "dimension_mismatch", "Field shapes differ: {left} vs {right}",
            left=u.values.shape, right=v.values.shape,
        )
    return float(np.sum(u.values * v.values) / u.n)
