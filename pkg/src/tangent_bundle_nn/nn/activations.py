"""Entrywise nonlinearities applied to stalk coordinates."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, ClassVar

import numpy as np

from tangent_bundle_nn.core.factory import PluginFactory
from tangent_bundle_nn.models.enums import Nonlinearity
from tangent_bundle_nn.protocols import NonlinearityProtocol


class Tanh:
    @property
    def name(self) -> str:
        return Nonlinearity.TANH.value

    def __call__(self, values: np.ndarray) -> np.ndarray:
        return np.tanh(values)

    def derivative(self, values: np.ndarray) -> np.ndarray:
        return 1.0 - np.tanh(values) ** 2


class ReLU:
    @property
    def name(self) -> str:
        return Nonlinearity.RELU.value

    def __call__(self, values: np.ndarray) -> np.ndarray:
        return np.maximum(values, 0.0)

    def derivative(self, values: np.ndarray) -> np.ndarray:
        # Subgradient 0 at the kink.
        return (values > 0.0).astype(np.float64)


class Identity:
    @property
    def name(self) -> str:
        return Nonlinearity.IDENTITY.value

    def __call__(self, values: np.ndarray) -> np.ndarray:
        return values

    def derivative(self, values: np.ndarray) -> np.ndarray:
        return np.ones_like(values)


class NonlinearityFactory(PluginFactory[NonlinearityProtocol]):
    """Factory for activations, keyed by their checkpoint tag."""

    _registry: ClassVar[dict[str, type[Any]]] = {}
    _default_type: ClassVar[str] = Nonlinearity.TANH.value
    _entity_name: ClassVar[str] = "nonlinearity"

    @classmethod
    def _default_impls(cls) -> Mapping[str, type[Any]]:
        return {
            Nonlinearity.TANH.value: Tanh,
            Nonlinearity.RELU.value: ReLU,
            Nonlinearity.IDENTITY.value: Identity,
        }
