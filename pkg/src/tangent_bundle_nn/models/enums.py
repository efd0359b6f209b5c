"""Enumerations shared across the package."""

from __future__ import annotations

from enum import Enum


class ManifoldTag(str, Enum):
    """Provenance of a point cloud."""

    SPHERE2 = "sphere2"
    CUSTOM = "custom"


class ShiftMethod(str, Enum):
    """How the sheaf shift operator ``exp(Delta_n)`` is computed."""

    EIG = "eig"
    SCALING_SQUARING = "scaling-squaring"


class Nonlinearity(str, Enum):
    """Entrywise nonlinearity applied to stalk coordinates."""

    TANH = "tanh"
    RELU = "relu"
    IDENTITY = "identity"


class ModelTag(str, Enum):
    """Architecture tag recorded in experiment results."""

    DDTNN = "ddtnn"
    MNN = "mnn"
