"""Denoising by fitting the noisy signal itself, plus the MNN baseline.

The network is trained to reproduce the noisy signal from the noisy
signal and evaluation always compares against the clean signal. A linear
one-layer network converges to the identity tap, so the error left over is
the noise that survives sampling onto the stalks (two of the three ambient
directions for the DD-TNN, all three for the MNN).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from tangent_bundle_nn.core.errors import TrainingError
from tangent_bundle_nn.filters.shift import ShiftOperator, shift_operator
from tangent_bundle_nn.models.enums import Nonlinearity, ShiftMethod
from tangent_bundle_nn.models.geometry import AmbientField, PointCloud
from tangent_bundle_nn.models.sheaf import CellularSheaf
from tangent_bundle_nn.nn.model import (
    TnnModel,
    as_features,
    backward,
    diffusion_stack,
    forward,
    init_model,
)
from tangent_bundle_nn.nn.optim import AdamState, adam_step
from tangent_bundle_nn.sheaf.assembly import trivial_sheaf
from tangent_bundle_nn.sheaf.kernel import default_epsilon, kernel_weights

logger = logging.getLogger(__name__)

DEFAULT_EPOCHS = 20000
DEFAULT_LR = 1e-2
DEFAULT_TAPS = 5


@dataclass
class TrainingOutcome:
    """Trained model, per-epoch traces and the final output."""

    model: TnnModel
    losses: np.ndarray
    eval_losses: np.ndarray | None
    output: np.ndarray
    train_mse: float
    eval_mse: float | None
    seed: int
    epochs: int


@dataclass
class MnnOutcome:
    """MNN training result together with the scalar sheaf it ran on."""

    training: TrainingOutcome
    sheaf: CellularSheaf
    output_field: AmbientField

    @property
    def eval_mse(self) -> float | None:
        return self.training.eval_mse


def evaluate_mse(output: np.ndarray, clean: np.ndarray, n_nodes: int) -> float:
    """``(1/n) ||output - clean||^2`` (Frobenius for multi-feature signals)."""
    output = np.asarray(output, dtype=np.float64)
    clean = np.asarray(clean, dtype=np.float64)
    if output.shape != clean.shape:
        output, clean = as_features(output), as_features(clean)
    if output.shape != clean.shape:
        raise TrainingError.build(
            "dimension_mismatch", "Output shape {left} does not match target {right}",
            left=output.shape, right=clean.shape,
        )
    return float(np.sum((output - clean) ** 2) / n_nodes)


def train_denoiser(
    model: TnnModel | None,
    shift: ShiftOperator,
    noisy: np.ndarray,
    epochs: int = DEFAULT_EPOCHS,
    lr: float = DEFAULT_LR,
    seed: int = 0,
    *,
    clean: np.ndarray | None = None,
    inputs: np.ndarray | None = None,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps_adam: float = 1e-8,
    log_every: int = 200,
) -> TrainingOutcome:
    """Fit ``model`` so its output on ``inputs`` matches ``noisy`` under ADAM.

    Args:
        model: Initial network, left untouched (a copy is trained). ``None``
            initializes a one-layer tanh network with ``K = 5`` from ``seed``.
        shift: Shift operator ``P``.
        noisy: Training target, ``N`` or ``N x F_L``.
        epochs: Number of full-graph ADAM steps.
        lr: Learning rate.
        seed: Initialization seed when ``model`` is ``None``; recorded either way.
        clean: Optional clean signal for a per-epoch evaluation trace.
        inputs: Network input; defaults to ``noisy``.
        beta1: First-moment decay.
        beta2: Second-moment decay.
        eps_adam: ADAM denominator offset.
        log_every: Debug-log cadence in epochs.

    Raises:
        TrainingError: ``nan_loss`` when the loss stops being finite.
    """
    target = as_features(noisy)
    features = as_features(inputs) if inputs is not None else target
    if model is None:
        model = init_model((features.shape[1], target.shape[1]), DEFAULT_TAPS, seed=seed)
    if model.widths[-1] != target.shape[1]:
        raise TrainingError.build(
            "width_mismatch", "Model outputs {f_out} features but the target has {cols}",
            f_out=model.widths[-1], cols=target.shape[1],
        )
    clean_target = as_features(clean) if clean is not None else None
    n_nodes = shift.n_nodes

    trained = model.copy()
    state = AdamState.for_model(trained, lr=lr, beta1=beta1, beta2=beta2, eps=eps_adam)
    input_stack = diffusion_stack(shift, features, trained.K)
    losses = np.empty(epochs)
    eval_losses = np.empty(epochs) if clean_target is not None else None

    for epoch in range(epochs):
        output, cache = forward(trained, shift, features, input_stack=input_stack)
        residual = output - target
        loss = float(np.sum(residual**2) / n_nodes)
        if not np.isfinite(loss):
            raise TrainingError.build(
                "nan_loss",
                "Loss became non-finite at epoch {epoch} with lr={lr}; lower the learning rate",
                epoch=epoch, lr=lr,
            )
        losses[epoch] = loss
        if eval_losses is not None and clean_target is not None:
            eval_losses[epoch] = evaluate_mse(output, clean_target, n_nodes)
        if log_every and epoch % log_every == 0:
            logger.debug("epoch %d: train_mse=%.6e", epoch, loss)
        adam_step(trained, backward(trained, cache, (2.0 / n_nodes) * residual), state)

    output, _ = forward(trained, shift, features, input_stack=input_stack)
    train_mse = evaluate_mse(output, target, n_nodes)
    eval_mse = evaluate_mse(output, clean_target, n_nodes) if clean_target is not None else None
    if epochs > 1 and losses[-1] > losses[0]:
        logger.warning(
            "Training loss increased from %.3e to %.3e over %d epochs", losses[0], losses[-1],
            epochs,
        )
    return TrainingOutcome(
        model=trained,
        losses=losses,
        eval_losses=eval_losses,
        output=output,
        train_mse=train_mse,
        eval_mse=eval_mse,
        seed=seed,
        epochs=epochs,
    )


def mnn_baseline(
    cloud: PointCloud,
    noisy: AmbientField,
    K: int = DEFAULT_TAPS,
    epochs: int = DEFAULT_EPOCHS,
    lr: float = DEFAULT_LR,
    seed: int = 0,
    *,
    clean: AmbientField | None = None,
    weights: sparse.csr_matrix | None = None,
    epsilon: float | None = None,
    nonlinearity: Nonlinearity | str = Nonlinearity.TANH,
    shift_method: ShiftMethod | str = ShiftMethod.EIG,
) -> MnnOutcome:
    """Manifold neural network on the scalar sheaf, ambient coordinates as features.

    The three ambient columns are the input features and a full
    ``F x F`` filter bank per tap maps them to the three output columns.
    Pass the DD-TNN's ``weights`` and ``epsilon`` to share its graph; by
    default they are rebuilt from ``cloud`` with the ``d = p - 1`` schedule.
    """
    if noisy.n != cloud.n:
        raise TrainingError.build(
            "dimension_mismatch", "Field has {rows} rows for {n} points",
            rows=noisy.n, n=cloud.n,
        )
    if epsilon is None:
        epsilon = default_epsilon(cloud.n, max(cloud.p - 1, 1))
    if weights is None:
        weights = kernel_weights(cloud, epsilon)
    sheaf = trivial_sheaf(weights, epsilon)
    shift = shift_operator(sheaf, shift_method)
    model = init_model((noisy.p, noisy.p), K, nonlinearity, seed=seed)
    training = train_denoiser(
        model, shift, noisy.values, epochs, lr, seed,
        clean=clean.values if clean is not None else None,
    )
    return MnnOutcome(
        training=training, sheaf=sheaf, output_field=AmbientField(values=training.output)
    )
