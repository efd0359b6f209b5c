"""Tests for the shift operator and FIR filters."""

from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg
from hypothesis import HealthCheck, given, settings
from pydantic import ValidationError

from tangent_bundle_nn import FilterError
from tangent_bundle_nn.filters import (
    FirFilter,
    ShiftOperator,
    apply_fir,
    load_filter,
    save_filter,
    shift_from_laplacian,
    shift_operator,
)
from tangent_bundle_nn.models import OrthogonalSheaf, ShiftMethod
from tangent_bundle_nn.sheaf import scalar_graph_laplacian, trivial_sheaf
from tangent_bundle_nn.spectral import SheafSpectrum, analyze_response, response_grid
from tests.strategies import (
    coefficients,
    non_amplifying_taps_strategy,
    normal_signal,
    seeds,
    taps_strategy,
)


class TestShiftOperator:
    """``P = exp(Delta)`` by both methods."""

    @pytest.mark.parametrize("method", list(ShiftMethod))
    def test_zero_laplacian_gives_identity(self, method: ShiftMethod) -> None:
        shift = shift_from_laplacian(np.zeros((1, 1)), method=method)
        assert np.allclose(shift.matrix, [[1.0]], atol=1e-15)
        assert shift.method is method

    @pytest.mark.parametrize("method", list(ShiftMethod))
    def test_path_graph_matches_expm(self, path_weights, method: ShiftMethod) -> None:
        shift = shift_operator(trivial_sheaf(path_weights, 1.0), method)
        expected = scipy.linalg.expm(scalar_graph_laplacian(path_weights, 1.0))
        assert np.allclose(shift.matrix, expected, atol=1e-10)

    def test_methods_agree(self, sheaf200: OrthogonalSheaf, shift200: ShiftOperator) -> None:
        pade = shift_operator(sheaf200, ShiftMethod.SCALING_SQUARING)
        difference = np.linalg.norm(pade.matrix - shift200.matrix)
        assert difference <= 1e-7 * np.linalg.norm(shift200.matrix)

    def test_spectral_radius(self, shift200: ShiftOperator) -> None:
        assert np.max(np.abs(np.linalg.eigvals(shift200.matrix))) <= 1.0 + 1e-8

    def test_eigenvectors_decay(self, shift200: ShiftOperator,
                                spectrum200: SheafSpectrum) -> None:
        phi = spectrum200.eigenvectors[:, :30]
        expected = phi * np.exp(-spectrum200.eigenvalues[:30])
        assert np.max(np.abs(shift200.matrix @ phi - expected)) <= 1e-7

    def test_node_count(self, shift200: ShiftOperator) -> None:
        assert shift200.stalk_dim == 2
        assert shift200.n_nodes == 200
        assert shift200.dim == 400

    def test_dimension_overflow(self) -> None:
        with pytest.raises(FilterError) as exc_info:
            shift_from_laplacian(np.zeros((5, 5)), dense_cap=4)
        assert exc_info.value.type == "dimension_overflow"

    def test_non_square_rejected(self) -> None:
        with pytest.raises(FilterError) as exc_info:
            shift_from_laplacian(np.zeros((2, 3)))
        assert exc_info.value.type == "dimension_mismatch"

    def test_unknown_method(self) -> None:
        with pytest.raises(ValueError):
            shift_from_laplacian(np.zeros((2, 2)), method="taylor")


class TestApplyFir:
    """Iterated application of the shift."""

    def test_single_tap_is_identity(self, shift200: ShiftOperator) -> None:
        x = normal_signal(0, shift200.dim)
        assert np.array_equal(apply_fir(shift200, FirFilter(taps=[1.0]), x), x)

    def test_delay_is_one_shift(self, shift200: ShiftOperator) -> None:
        x = normal_signal(0, shift200.dim)
        assert np.allclose(apply_fir(shift200, FirFilter(taps=[0.0, 1.0]), x),
                           shift200.matrix @ x, atol=1e-14)

    def test_matches_explicit_powers(self, shift200: ShiftOperator) -> None:
        x = normal_signal(1, shift200.dim)
        taps = [0.4, -0.3, 0.2, 0.1]
        explicit = sum(
            tap * np.linalg.matrix_power(shift200.matrix, k) @ x for k, tap in enumerate(taps)
        )
        assert np.allclose(apply_fir(shift200, FirFilter(taps=taps), x), explicit, atol=1e-12)

    @given(first=taps_strategy(min_size=4, max_size=4),
           second=taps_strategy(min_size=4, max_size=4),
           a=coefficients, b=coefficients, seed=seeds)
    @settings(max_examples=20, suppress_health_check=[HealthCheck.too_slow])
    def test_linear_in_taps(
        self, shift200: ShiftOperator, first: list[float], second: list[float],
        a: float, b: float, seed: int,
    ) -> None:
        x = normal_signal(seed, shift200.dim)
        combined = FirFilter(taps=[a * h + b * g for h, g in zip(first, second, strict=True)])
        left = apply_fir(shift200, combined, x)
        right = (a * apply_fir(shift200, FirFilter(taps=first), x)
                 + b * apply_fir(shift200, FirFilter(taps=second), x))
        assert np.allclose(left, right, atol=1e-11 * (1.0 + abs(a) + abs(b)))

    @given(seed=seeds, a=coefficients, b=coefficients)
    @settings(max_examples=20, suppress_health_check=[HealthCheck.too_slow])
    def test_linear_in_signal(self, shift200: ShiftOperator, seed: int, a: float,
                              b: float) -> None:
        fir = FirFilter(taps=[0.5, 0.3, -0.2])
        x = normal_signal(seed, shift200.dim)
        y = normal_signal(seed + 1, shift200.dim)
        left = apply_fir(shift200, fir, a * x + b * y)
        right = a * apply_fir(shift200, fir, x) + b * apply_fir(shift200, fir, y)
        assert np.allclose(left, right, atol=1e-11 * (1.0 + abs(a) + abs(b)))

    def test_commutes_with_laplacian(self, shift200: ShiftOperator,
                                     sheaf200: OrthogonalSheaf) -> None:
        laplacian = sheaf200.laplacian
        fir = FirFilter(taps=[0.2, 0.5, -0.4, 0.1])
        x = normal_signal(3, shift200.dim)
        left = laplacian @ apply_fir(shift200, fir, x)
        right = apply_fir(shift200, fir, laplacian @ x)
        bound = 1e-8 * np.linalg.norm(x) * np.linalg.norm(laplacian)
        assert np.linalg.norm(left - right) <= bound

    @given(taps=non_amplifying_taps_strategy(), seed=seeds)
    @settings(max_examples=20, suppress_health_check=[HealthCheck.too_slow])
    def test_non_amplifying_filter_bounds_energy(
        self, shift200: ShiftOperator, spectrum200: SheafSpectrum, taps: list[float], seed: int
    ) -> None:
        fir = FirFilter(taps=taps)
        analysis = analyze_response(fir.frequency_response(),
                                    response_grid(float(spectrum200.eigenvalues[-1])))
        assert analysis.non_amplifying
        x = normal_signal(seed, shift200.dim)
        output = apply_fir(shift200, fir, x)
        assert spectrum200.norm_sq(output) <= (1.0 + 1e-8) ** 2 * spectrum200.norm_sq(x)

    def test_multi_feature_columns(self, shift200: ShiftOperator) -> None:
        fir = FirFilter(taps=[0.5, 0.5])
        signals = normal_signal(6, shift200.dim, 2)
        output = apply_fir(shift200, fir, signals)
        assert output.shape == signals.shape
        assert np.allclose(output[:, 1], apply_fir(shift200, fir, signals[:, 1]), atol=1e-14)

    def test_length_mismatch(self, shift200: ShiftOperator) -> None:
        with pytest.raises(FilterError) as exc_info:
            apply_fir(shift200, FirFilter(taps=[1.0]), np.zeros(7))
        assert exc_info.value.type == "dimension_mismatch"


class TestFirFilter:
    """Tap validation and persistence."""

    def test_empty_taps_rejected(self) -> None:
        with pytest.raises(ValidationError) as exc_info:
            FirFilter(taps=[])
        assert exc_info.value.errors()[0]["type"] == "invalid_taps"

    def test_non_finite_taps_rejected(self) -> None:
        with pytest.raises(ValidationError):
            FirFilter(taps=[1.0, float("inf")])

    def test_tap_count(self) -> None:
        assert FirFilter(taps=[1.0, 2.0, 3.0]).K == 3

    def test_save_load(self, tmp_path) -> None:
        fir = FirFilter(taps=[0.1, -0.25, 1.0 / 3.0])
        loaded = load_filter(save_filter(fir, tmp_path / "filter.json"))
        assert loaded == fir

    def test_load_invalid(self, tmp_path) -> None:
        path = tmp_path / "filter.json"
        path.write_text('{"taps": []}', encoding="utf-8")
        with pytest.raises(FilterError) as exc_info:
            load_filter(path)
        assert exc_info.value.type == "invalid_taps"

    def test_load_missing_key(self, tmp_path) -> None:
        path = tmp_path / "filter.json"
        path.write_text('{"weights": [1.0]}', encoding="utf-8")
        with pytest.raises(FilterError) as exc_info:
            load_filter(path)
        assert exc_info.value.type == "serialization"
