"""Tests for the plugin factories."""

from collections.abc import Iterator

import numpy as np
import pytest

from tangent_bundle_nn.data.csv_source import CSVCloudSource, write_cloud_csv
from tangent_bundle_nn.data.factory import CloudSourceFactory
from tangent_bundle_nn.data.sphere_source import SphereCloudSource
from tangent_bundle_nn.filters.shift import (
    EigShiftBuilder,
    ScalingSquaringShiftBuilder,
    ShiftBuilderFactory,
)
from tangent_bundle_nn.geometry import sample_sphere
from tangent_bundle_nn.models import ManifoldTag, Nonlinearity, ShiftMethod
from tangent_bundle_nn.nn.activations import Identity, NonlinearityFactory, Tanh


class Softsign:
    @property
    def name(self) -> str:
        return "softsign"

    def __call__(self, values: np.ndarray) -> np.ndarray:
        return values / (1.0 + np.abs(values))

    def derivative(self, values: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 + np.abs(values)) ** 2


@pytest.fixture
def softsign_registered() -> Iterator[None]:
    NonlinearityFactory.register("softsign", Softsign)
    yield
    NonlinearityFactory.unregister("softsign")


class TestCloudSourceFactory:
    """Point cloud sources."""

    def test_default_is_sphere(self) -> None:
        source = CloudSourceFactory.create(n=60, seed=2)
        assert isinstance(source, SphereCloudSource)
        cloud = source.load()
        assert cloud.n == 60
        assert cloud.manifold_tag is ManifoldTag.SPHERE2

    def test_load_is_cached(self) -> None:
        source = CloudSourceFactory.create("sphere", n=30, seed=0)
        assert source.load() is source.load()

    def test_from_spec_sphere(self) -> None:
        source = CloudSourceFactory.from_spec("sphere:40", seed=5)
        assert source.name == "sphere:40"
        np.testing.assert_array_equal(source.load().points, sample_sphere(40, 5).points)

    def test_from_spec_csv(self, tmp_path) -> None:
        path = write_cloud_csv(sample_sphere(25, 1), tmp_path / "cloud.csv")
        source = CloudSourceFactory.from_spec(str(path), seed=9)
        assert isinstance(source, CSVCloudSource)
        cloud = source.load()
        assert cloud.seed == 9
        assert cloud.manifold_tag is ManifoldTag.CUSTOM

    def test_unknown_type(self) -> None:
        with pytest.raises(ValueError, match="Unknown cloud source type"):
            CloudSourceFactory.create("torus")

    def test_available_types(self) -> None:
        assert CloudSourceFactory.available_types() == ["csv", "sphere"]


class TestShiftBuilderFactory:
    """Shift operator builders."""

    def test_default_is_eig(self) -> None:
        builder = ShiftBuilderFactory.create()
        assert isinstance(builder, EigShiftBuilder)
        assert builder.name == "eig"

    def test_scaling_squaring(self) -> None:
        builder = ShiftBuilderFactory.create("scaling-squaring")
        assert isinstance(builder, ScalingSquaringShiftBuilder)

    def test_unknown_method(self) -> None:
        with pytest.raises(ValueError, match="Available types: eig, scaling-squaring"):
            ShiftBuilderFactory.create("pade")


class TestNonlinearityFactory:
    """Entrywise nonlinearities."""

    def test_default_is_tanh(self) -> None:
        assert isinstance(NonlinearityFactory.create(), Tanh)

    @pytest.mark.parametrize("tag", list(Nonlinearity))
    def test_every_tag_registered(self, tag: Nonlinearity) -> None:
        assert NonlinearityFactory.create(tag.value).name == tag.value

    def test_identity_derivative(self) -> None:
        values = np.linspace(-2.0, 2.0, 7)
        identity = NonlinearityFactory.create("identity")
        assert isinstance(identity, Identity)
        np.testing.assert_array_equal(identity(values), values)
        np.testing.assert_array_equal(identity.derivative(values), np.ones_like(values))

    def test_register_custom(self, softsign_registered: None) -> None:
        sigma = NonlinearityFactory.create("softsign")
        assert sigma(np.array([1.0]))[0] == pytest.approx(0.5)
        assert "softsign" in NonlinearityFactory.available_types()

    def test_unregister(self) -> None:
        NonlinearityFactory.register("softsign", Softsign)
        NonlinearityFactory.unregister("softsign")
        with pytest.raises(ValueError):
            NonlinearityFactory.create("softsign")


class TestRegistryKeys:
    """Enum tags and plain names address the same entries."""

    def test_enum_and_string_agree(self) -> None:
        assert ShiftBuilderFactory.get_class(ShiftMethod.SCALING_SQUARING) is (
            ShiftBuilderFactory.get_class("scaling-squaring")
        )
        assert isinstance(NonlinearityFactory.create(Nonlinearity.IDENTITY), Identity)

    def test_get_class_default(self) -> None:
        assert NonlinearityFactory.get_class() is Tanh

    def test_builtin_returns_after_unregister(self) -> None:
        NonlinearityFactory.unregister(Nonlinearity.RELU)
        assert NonlinearityFactory.create("relu").name == "relu"

    def test_registration_shadows_builtin(self) -> None:
        NonlinearityFactory.register(Nonlinearity.TANH, Softsign)
        try:
            assert NonlinearityFactory.create().name == "softsign"
        finally:
            NonlinearityFactory.unregister(Nonlinearity.TANH)
        assert isinstance(NonlinearityFactory.create(), Tanh)
