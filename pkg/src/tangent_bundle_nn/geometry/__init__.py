"""Point clouds on manifolds and ambient tangent fields."""

from __future__ import annotations

from tangent_bundle_nn.geometry.sampling import add_awgn, rotational_field, sample_sphere

__all__ = ["add_awgn", "rotational_field", "sample_sphere"]
