"""Tests for DD-TNN forward/backward passes, ADAM, training and checkpoints."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from tangent_bundle_nn import TrainingError
from tangent_bundle_nn.filters import (
    FirFilter,
    ShiftOperator,
    apply_fir,
    shift_from_laplacian,
    shift_operator,
)
from tangent_bundle_nn.geometry import add_awgn, rotational_field
from tangent_bundle_nn.models import Nonlinearity, OrthogonalSheaf, PointCloud, ShiftMethod
from tangent_bundle_nn.nn import (
    AdamState,
    TnnLayerParams,
    TnnModel,
    adam_step,
    backward,
    diffusion_stack,
    evaluate_mse,
    forward,
    init_model,
    load_checkpoint,
    mnn_baseline,
    save_checkpoint,
    train_denoiser,
    write_loss_trace,
)
from tangent_bundle_nn.sheaf import (
    lift_signal,
    sample_field,
    scalar_graph_laplacian,
    trivial_sheaf,
)
from tests.strategies import coefficients, normal_signal, random_rotations, seeds


def _random_shift(seed: int, n: int = 10, d: int = 2) -> ShiftOperator:
    """Non-symmetric stand-in for ``P`` so transposition errors show up."""
    rng = np.random.default_rng(seed)
    size = n * d
    return ShiftOperator(
        matrix=0.3 * rng.standard_normal((size, size)),
        method=ShiftMethod.EIG,
        metric=np.ones(size),
        stalk_dim=d,
    )


def _single_layer(taps: np.ndarray, nonlinearity: Nonlinearity) -> TnnModel:
    return TnnModel(layers=[TnnLayerParams(taps=taps)], nonlinearity=nonlinearity)


class TestForward:
    """Layer recursion ``X_{l+1} = sigma(sum_k P^k X_l H_{l,k})``."""

    def test_identity_network(self) -> None:
        shift = _random_shift(0)
        model = _single_layer(np.ones((1, 1, 1)), Nonlinearity.IDENTITY)
        x = normal_signal(0, shift.dim)
        output, _ = forward(model, shift, x)
        assert np.array_equal(output[:, 0], x)

    def test_linear_single_feature_is_fir(self, shift200: ShiftOperator) -> None:
        taps = np.array([0.4, -0.1, 0.3, 0.2])
        model = _single_layer(taps[:, None, None], Nonlinearity.IDENTITY)
        x = normal_signal(1, shift200.dim)
        output, _ = forward(model, shift200, x)
        assert np.allclose(output[:, 0], apply_fir(shift200, FirFilter(taps=taps), x),
                           atol=1e-13)

    def test_trivial_bundle_matches_scalar_graph(self, sheaf200: OrthogonalSheaf) -> None:
        scalar = trivial_sheaf(sheaf200.weights, sheaf200.epsilon)
        through_sheaf = shift_operator(scalar)
        through_graph = shift_from_laplacian(
            scalar_graph_laplacian(sheaf200.weights, sheaf200.epsilon), scalar.stalk_metric
        )
        model = init_model((3, 4, 3), 3, Nonlinearity.TANH, seed=5)
        x = normal_signal(2, scalar.dim, 3)
        left, _ = forward(model, through_sheaf, x)
        right, _ = forward(model, through_graph, x)
        assert np.array_equal(left, right)

    def test_precomputed_input_stack(self, shift200: ShiftOperator) -> None:
        model = init_model((1, 2, 1), 4, seed=1)
        x = normal_signal(3, shift200.dim)
        plain, _ = forward(model, shift200, x)
        stacked, _ = forward(model, shift200, x, input_stack=diffusion_stack(shift200, x, 4))
        assert np.array_equal(plain, stacked)

    @given(seed=seeds, a=coefficients, b=coefficients)
    @settings(max_examples=20, suppress_health_check=[HealthCheck.too_slow])
    def test_linear_network_superposition(self, seed: int, a: float, b: float) -> None:
        shift = _random_shift(seed)
        model = init_model((2, 3, 2), 3, Nonlinearity.IDENTITY, seed=seed)
        x = normal_signal(seed, shift.dim, 2)
        y = normal_signal(seed + 1, shift.dim, 2)
        combined, _ = forward(model, shift, a * x + b * y)
        fx, _ = forward(model, shift, x)
        fy, _ = forward(model, shift, y)
        assert np.allclose(combined, a * fx + b * fy, atol=1e-10 * (1.0 + abs(a) + abs(b)))

    def test_width_mismatch(self) -> None:
        shift = _random_shift(0)
        model = init_model((2, 1), 2, seed=0)
        with pytest.raises(TrainingError) as exc_info:
            forward(model, shift, normal_signal(0, shift.dim, 3))
        assert exc_info.value.type == "width_mismatch"

    def test_signal_length_mismatch(self) -> None:
        model = init_model((1, 1), 2, seed=0)
        with pytest.raises(TrainingError) as exc_info:
            forward(model, _random_shift(0), np.zeros(7))
        assert exc_info.value.type == "dimension_mismatch"


class TestModel:
    """Parameter containers and initialization."""

    def test_init_bounds(self) -> None:
        model = init_model((3, 4, 2), 5, seed=0)
        assert model.widths == (3, 4, 2)
        assert model.K == 5
        assert np.max(np.abs(model.layers[0].taps)) <= (3 * 5) ** -0.5
        assert np.max(np.abs(model.layers[1].taps)) <= (4 * 5) ** -0.5

    def test_init_is_deterministic(self) -> None:
        first = init_model((1, 1), 5, seed=9)
        second = init_model((1, 1), 5, seed=9)
        assert np.array_equal(first.layers[0].taps, second.layers[0].taps)

    def test_mismatched_layers_rejected(self) -> None:
        with pytest.raises(TrainingError) as exc_info:
            TnnModel(layers=[TnnLayerParams(taps=np.zeros((2, 1, 3))),
                             TnnLayerParams(taps=np.zeros((2, 2, 1)))])
        assert exc_info.value.type == "width_mismatch"

    def test_mixed_tap_counts_rejected(self) -> None:
        with pytest.raises(TrainingError):
            TnnModel(layers=[TnnLayerParams(taps=np.zeros((2, 1, 1))),
                             TnnLayerParams(taps=np.zeros((3, 1, 1)))])

    def test_non_finite_taps_rejected(self) -> None:
        with pytest.raises(TrainingError) as exc_info:
            TnnLayerParams(taps=np.full((1, 1, 1), np.nan))
        assert exc_info.value.type == "non_finite"

    def test_copy_is_independent(self) -> None:
        model = init_model((1, 1), 2, seed=0)
        clone = model.copy()
        clone.layers[0].taps += 1.0
        assert not np.array_equal(clone.layers[0].taps, model.layers[0].taps)


class TestBackward:
    """Reverse-mode gradients against finite differences."""

    def test_zero_upstream_gives_zero_gradients(self) -> None:
        shift = _random_shift(1)
        model = init_model((2, 3, 2), 3, seed=1)
        output, cache = forward(model, shift, normal_signal(1, shift.dim, 2))
        gradients = backward(model, cache, np.zeros_like(output))
        assert all(np.array_equal(g, np.zeros_like(g)) for g in gradients)

    def test_linear_single_tap_gradient(self) -> None:
        shift = _random_shift(2)
        model = _single_layer(normal_signal(2, 6).reshape(1, 2, 3), Nonlinearity.IDENTITY)
        x = normal_signal(3, shift.dim, 2)
        upstream = normal_signal(4, shift.dim, 3)
        _, cache = forward(model, shift, x)
        (gradient,) = backward(model, cache, upstream)
        assert np.allclose(gradient[0], x.T @ upstream, atol=1e-12)

    @pytest.mark.parametrize(
        ("widths", "K", "nonlinearity"),
        [
            *(
                ((features,) * (layers + 1), K, Nonlinearity.TANH)
                for layers in (1, 2)
                for K in (1, 3, 5)
                for features in (1, 3)
            ),
            ((1, 2, 1), 3, Nonlinearity.TANH),
            ((2, 3, 2), 3, Nonlinearity.TANH),
            ((2, 2, 2), 5, Nonlinearity.IDENTITY),
        ],
    )
    def test_matches_central_differences(
        self, widths: tuple[int, ...], K: int, nonlinearity: Nonlinearity
    ) -> None:
        shift = _random_shift(3)
        model = init_model(widths, K, nonlinearity, seed=3)
        x = normal_signal(5, shift.dim, widths[0])
        weights = normal_signal(6, shift.dim, widths[-1])

        def loss() -> float:
            output, _ = forward(model, shift, x)
            return float(np.sum(weights * output))

        _, cache = forward(model, shift, x)
        analytic = backward(model, cache, weights)

        step = 1e-6
        numeric = []
        for layer in model.layers:
            grad = np.zeros_like(layer.taps)
            for index in np.ndindex(layer.taps.shape):
                original = layer.taps[index]
                layer.taps[index] = original + step
                upper = loss()
                layer.taps[index] = original - step
                lower = loss()
                layer.taps[index] = original
                grad[index] = (upper - lower) / (2.0 * step)
            numeric.append(grad)

        flat_analytic = np.concatenate([g.ravel() for g in analytic])
        flat_numeric = np.concatenate([g.ravel() for g in numeric])
        error = np.linalg.norm(flat_analytic - flat_numeric) / np.linalg.norm(flat_numeric)
        assert error < 1e-6

    def test_stale_cache_after_update(self) -> None:
        shift = _random_shift(4)
        model = init_model((1, 1), 2, seed=4)
        output, cache = forward(model, shift, normal_signal(7, shift.dim))
        adam_step(model, [np.zeros_like(p) for p in model.parameters()],
                  AdamState.for_model(model))
        with pytest.raises(TrainingError) as exc_info:
            backward(model, cache, output)
        assert exc_info.value.type == "stale_cache"

    def test_cache_from_other_model(self) -> None:
        shift = _random_shift(4)
        model = init_model((1, 1), 2, seed=4)
        output, cache = forward(model, shift, normal_signal(7, shift.dim))
        with pytest.raises(TrainingError):
            backward(model.copy(), cache, output)


class TestAdam:
    """Bias-corrected ADAM updates."""

    def test_zero_learning_rate(self) -> None:
        model = init_model((2, 2), 3, seed=0)
        before = [p.copy() for p in model.parameters()]
        state = AdamState.for_model(model, lr=0.0)
        adam_step(model, [np.ones_like(p) for p in model.parameters()], state)
        assert all(np.array_equal(a, b) for a, b in zip(before, model.parameters(), strict=True))
        assert state.step == 1
        assert model.version == 1

    def test_first_step_moves_by_learning_rate(self) -> None:
        model = init_model((2, 2), 3, seed=0)
        before = model.parameters()[0].copy()
        gradient = normal_signal(1, before.size).reshape(before.shape)
        adam_step(model, [gradient], AdamState.for_model(model, lr=1e-2))
        assert np.allclose(model.parameters()[0] - before, -1e-2 * np.sign(gradient), atol=1e-6)

    def test_gradient_count_mismatch(self) -> None:
        model = init_model((1, 1, 1), 2, seed=0)
        with pytest.raises(TrainingError) as exc_info:
            adam_step(model, [np.zeros((2, 1, 1))], AdamState.for_model(model))
        assert exc_info.value.type == "dimension_mismatch"


class TestTraining:
    """Fitting the noisy signal and evaluating against the clean one."""

    def test_evaluate_mse_examples(self) -> None:
        assert evaluate_mse(np.ones(4), np.ones(4), 2) == 0.0
        assert evaluate_mse(np.array([1.0, 1.0]), np.zeros(2), 2) == pytest.approx(1.0)

    def test_evaluate_mse_shape_mismatch(self) -> None:
        with pytest.raises(TrainingError):
            evaluate_mse(np.zeros(4), np.zeros(5), 2)

    @given(seed=seeds)
    @settings(max_examples=20, suppress_health_check=[HealthCheck.too_slow])
    def test_evaluate_mse_invariant_under_rebasing(self, seed: int) -> None:
        rotations = random_rotations(seed, 50, 2)
        a = normal_signal(seed, 100).reshape(50, 2)
        b = normal_signal(seed + 1, 100).reshape(50, 2)
        rotate = lambda s: np.einsum("iab,ib->ia", rotations, s).ravel()  # noqa: E731
        assert evaluate_mse(rotate(a), rotate(b), 50) == pytest.approx(
            evaluate_mse(a.ravel(), b.ravel(), 50), rel=1e-12
        )

    def test_stalk_loss_equals_ambient_loss(self, sheaf200: OrthogonalSheaf) -> None:
        a = normal_signal(10, sheaf200.dim)
        b = normal_signal(11, sheaf200.dim)
        ambient = np.sum(
            (lift_signal(sheaf200, a).values - lift_signal(sheaf200, b).values) ** 2
        ) / sheaf200.n
        assert evaluate_mse(a, b, sheaf200.n) == pytest.approx(ambient, abs=1e-10)

    def test_zero_signal_stays_zero(self, shift200: ShiftOperator) -> None:
        model = init_model((1, 1), 3, Nonlinearity.IDENTITY, seed=0)
        zeros = np.zeros(shift200.dim)
        outcome = train_denoiser(model, shift200, zeros, epochs=5, clean=zeros)
        assert np.all(outcome.losses == 0.0)
        assert np.max(np.abs(outcome.output)) <= 1e-6
        assert outcome.eval_mse == 0.0

    def test_zero_learning_rate_keeps_parameters(
        self, shift200: ShiftOperator, signal200: np.ndarray
    ) -> None:
        model = init_model((1, 1), 3, seed=2)
        outcome = train_denoiser(model, shift200, signal200, epochs=4, lr=0.0)
        assert np.array_equal(outcome.model.layers[0].taps, model.layers[0].taps)
        assert np.all(outcome.losses == outcome.losses[0])

    def test_input_model_untouched(self, shift200: ShiftOperator, signal200: np.ndarray) -> None:
        model = init_model((1, 1), 3, seed=2)
        before = model.layers[0].taps.copy()
        train_denoiser(model, shift200, signal200, epochs=3)
        assert np.array_equal(model.layers[0].taps, before)

    def test_training_lowers_loss(self, sheaf200: OrthogonalSheaf, sphere200: PointCloud,
                                  shift200: ShiftOperator) -> None:
        clean = rotational_field(sphere200)
        noisy = sample_field(sheaf200, add_awgn(clean, 0.05, 1))
        outcome = train_denoiser(None, shift200, noisy, epochs=60, seed=3,
                                 clean=sample_field(sheaf200, clean))
        assert outcome.losses[-1] < outcome.losses[0]
        assert outcome.eval_losses is not None
        assert outcome.eval_losses.shape == (60,)
        assert outcome.model.K == 5

    def test_non_finite_loss_aborts(self, shift200: ShiftOperator) -> None:
        with pytest.raises(TrainingError) as exc_info:
            train_denoiser(None, shift200, np.full(shift200.dim, np.inf), epochs=2)
        assert exc_info.value.type == "nan_loss"

    def test_output_width_must_match_target(self, shift200: ShiftOperator) -> None:
        with pytest.raises(TrainingError) as exc_info:
            train_denoiser(init_model((1, 2), 2), shift200, np.zeros(shift200.dim), epochs=1)
        assert exc_info.value.type == "width_mismatch"


class TestMnnBaseline:
    """Scalar-graph network on ambient coordinates."""

    def test_same_seed_same_trace(self, sphere200: PointCloud) -> None:
        clean = rotational_field(sphere200)
        noisy = add_awgn(clean, 1e-2, 0)
        first = mnn_baseline(sphere200, noisy, K=3, epochs=10, seed=4, clean=clean)
        second = mnn_baseline(sphere200, noisy, K=3, epochs=10, seed=4, clean=clean)
        assert np.array_equal(first.training.losses, second.training.losses)
        assert first.output_field.values.shape == (200, 3)
        assert first.sheaf.d_hat == 1
        assert first.eval_mse is not None

    def test_shares_weights(self, sphere200: PointCloud, sheaf200: OrthogonalSheaf) -> None:
        clean = rotational_field(sphere200)
        outcome = mnn_baseline(sphere200, clean, K=2, epochs=1, weights=sheaf200.weights,
                               epsilon=sheaf200.epsilon)
        assert (outcome.sheaf.weights != sheaf200.weights).nnz == 0
        assert outcome.training.model.widths == (3, 3)

    def test_clean_target_is_fixed_point(self, sheaf200: OrthogonalSheaf,
                                         sphere200: PointCloud) -> None:
        shift = shift_operator(trivial_sheaf(sheaf200.weights, sheaf200.epsilon))
        taps = np.zeros((3, 3, 3))
        taps[0] = np.eye(3)
        model = _single_layer(taps, Nonlinearity.IDENTITY)
        clean = rotational_field(sphere200).values
        outcome = train_denoiser(model, shift, clean, epochs=20, clean=clean)
        assert outcome.eval_mse is not None
        assert outcome.eval_mse < 1e-6

    def test_row_count_mismatch(self, sphere200: PointCloud) -> None:
        field = rotational_field(sphere200.subset(50))
        with pytest.raises(TrainingError):
            mnn_baseline(sphere200, field, epochs=1)


class TestCheckpoint:
    """JSON checkpoints and CSV loss traces."""

    def test_save_load(self, tmp_path) -> None:
        model = init_model((2, 3, 1), 4, Nonlinearity.RELU, seed=8)
        path = save_checkpoint(model, tmp_path / "checkpoint.json", seed=8, epochs=12)
        loaded, meta = load_checkpoint(path)
        assert loaded.nonlinearity is Nonlinearity.RELU
        assert all(np.array_equal(a.taps, b.taps)
                   for a, b in zip(loaded.layers, model.layers, strict=True))
        assert meta == {"seed": 8, "epochs": 12}

    def test_load_bad_shapes(self, tmp_path) -> None:
        path = tmp_path / "checkpoint.json"
        path.write_text(
            '{"nonlinearity": "tanh", "layers": [{"shape": [1, 1, 2], "taps": [0.1, 0.2]},'
            ' {"shape": [1, 3, 1], "taps": [0.1, 0.2, 0.3]}]}',
            encoding="utf-8",
        )
        with pytest.raises(TrainingError) as exc_info:
            load_checkpoint(path)
        assert exc_info.value.type == "width_mismatch"

    def test_load_missing_file(self, tmp_path) -> None:
        with pytest.raises(TrainingError) as exc_info:
            load_checkpoint(tmp_path / "missing.json")
        assert exc_info.value.type == "serialization"

    def test_loss_trace(self, tmp_path, shift200: ShiftOperator, signal200: np.ndarray) -> None:
        outcome = train_denoiser(None, shift200, signal200, epochs=3, clean=signal200)
        lines = write_loss_trace(outcome, tmp_path / "loss.csv").read_text(
            encoding="utf-8"
        ).splitlines()
        assert lines[0] == "epoch,train_mse,eval_mse"
        assert len(lines) == 4
        assert lines[1].startswith("0,")
