"""Shared pytest fixtures and Hypothesis configuration.

This module provides pytest fixtures and configures Hypothesis profiles
for the test suite.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import Verbosity, settings

from tangent_bundle_nn.filters import ShiftOperator, shift_operator
from tangent_bundle_nn.geometry import rotational_field, sample_sphere
from tangent_bundle_nn.models import OrthogonalSheaf, PointCloud
from tangent_bundle_nn.sheaf import build_sheaf, sample_field, symmetric_csr
from tangent_bundle_nn.spectral import SheafSpectrum, eigendecompose

# Configure Hypothesis settings for the test suite
settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.register_profile("debug", max_examples=10, deadline=None, verbosity=Verbosity.verbose)


@pytest.fixture(scope="session")
def sphere200() -> PointCloud:
    return sample_sphere(200, seed=0)


@pytest.fixture(scope="session")
def sheaf200(sphere200: PointCloud) -> OrthogonalSheaf:
    return build_sheaf(sphere200)


@pytest.fixture(scope="session")
def spectrum200(sheaf200: OrthogonalSheaf) -> SheafSpectrum:
    return eigendecompose(sheaf200)


@pytest.fixture(scope="session")
def shift200(sheaf200: OrthogonalSheaf) -> ShiftOperator:
    return shift_operator(sheaf200)


@pytest.fixture(scope="session")
def signal200(sphere200: PointCloud, sheaf200: OrthogonalSheaf) -> np.ndarray:
    """Stalk coordinates of the rotational field."""
    return sample_field(sheaf200, rotational_field(sphere200))


@pytest.fixture
def path_weights():
    """Unit weights on the 3-node path 0 - 1 - 2."""
    return symmetric_csr(3, np.array([[0, 1], [1, 2]]), np.array([1.0, 1.0]))
