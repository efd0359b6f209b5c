"""DD-TNN layers: ``X_{l+1} = sigma(sum_k P^k X_l H_{l,k})``.

Forward caches the diffusion stacks ``Z_k = P^k X_l`` and pre-activations
so that :func:`backward` can compute every ``dL/dH_{l,k}`` in one reverse
sweep.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from tangent_bundle_nn.core.errors import TrainingError, check_same_length
from tangent_bundle_nn.filters.shift import ShiftOperator
from tangent_bundle_nn.models.enums import Nonlinearity
from tangent_bundle_nn.nn.activations import NonlinearityFactory
from tangent_bundle_nn.protocols import NonlinearityProtocol


@dataclass
class TnnLayerParams:
    """Filter taps ``H_k`` stacked as a ``K x F_in x F_out`` array."""

    taps: np.ndarray

    def __post_init__(self) -> None:
        self.taps = np.array(self.taps, dtype=np.float64)
        if self.taps.ndim != 3 or 0 in self.taps.shape:
            raise TrainingError.build(
                "width_mismatch",
                "Layer taps must be a non-empty K x F_in x F_out array, got {shape}",
                shape=self.taps.shape,
            )
        if not np.all(np.isfinite(self.taps)):
            raise TrainingError.build("non_finite", "Layer taps contain non-finite entries")

    @property
    def K(self) -> int:
        return int(self.taps.shape[0])

    @property
    def f_in(self) -> int:
        return int(self.taps.shape[1])

    @property
    def f_out(self) -> int:
        return int(self.taps.shape[2])


@dataclass
class TnnModel:
    """Stack of layers sharing one tap count and one nonlinearity.

    ``version`` increases on every parameter update; caches remember the
    version they were computed at.
    """

    layers: list[TnnLayerParams]
    nonlinearity: Nonlinearity = Nonlinearity.TANH
    version: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        self.nonlinearity = Nonlinearity(self.nonlinearity)
        if not self.layers:
            raise TrainingError.build("width_mismatch", "A model needs at least one layer")
        taps = {layer.K for layer in self.layers}
        if len(taps) != 1:
            raise TrainingError.build(
                "width_mismatch", "All layers must share K, got {taps}", taps=sorted(taps)
            )
        for index, (left, right) in enumerate(zip(self.layers, self.layers[1:], strict=False)):
            if left.f_out != right.f_in:
                raise TrainingError.build(
                    "width_mismatch",
                    "Layer {layer} outputs {f_out} features but layer {next_layer} takes {f_in}",
                    layer=index, next_layer=index + 1, f_out=left.f_out, f_in=right.f_in,
                )

    @property
    def K(self) -> int:
        return self.layers[0].K

    @property
    def widths(self) -> tuple[int, ...]:
        return (self.layers[0].f_in, *(layer.f_out for layer in self.layers))

    @property
    def activation(self) -> NonlinearityProtocol:
        return NonlinearityFactory.create(self.nonlinearity)

    def parameters(self) -> list[np.ndarray]:
        return [layer.taps for layer in self.layers]

    def copy(self) -> TnnModel:
        return TnnModel(
            layers=[TnnLayerParams(taps=layer.taps.copy()) for layer in self.layers],
            nonlinearity=self.nonlinearity,
        )


@dataclass
class ForwardCache:
    """Activations of one forward call."""

    model: TnnModel
    version: int
    shift: ShiftOperator
    stacks: list[np.ndarray]
    pre_activations: list[np.ndarray]


def init_model(
    widths: Sequence[int],
    K: int,
    nonlinearity: Nonlinearity | str = Nonlinearity.TANH,
    seed: int = 0,
) -> TnnModel:
    """Uniform initialization in ``[-a, a]`` with ``a = (F_in K)^-1/2`` per layer."""
    if len(widths) < 2 or K < 1 or min(widths) < 1:
        raise TrainingError.build(
            "width_mismatch", "Need >= 2 positive widths and K >= 1, got {widths}, K={K}",
            widths=list(widths), K=K,
        )
    rng = np.random.default_rng(seed)
    layers = []
    for f_in, f_out in zip(widths[:-1], widths[1:], strict=True):
        bound = (f_in * K) ** -0.5
        layers.append(TnnLayerParams(taps=rng.uniform(-bound, bound, size=(K, f_in, f_out))))
    return TnnModel(layers=layers, nonlinearity=Nonlinearity(nonlinearity))


def as_features(signal: np.ndarray) -> np.ndarray:
    """View a single-feature signal as an ``N x 1`` matrix."""
    signal = np.asarray(signal, dtype=np.float64)
    return signal[:, None] if signal.ndim == 1 else signal


def diffusion_stack(shift: ShiftOperator, signal: np.ndarray, K: int) -> np.ndarray:
    """``Z_k = P^k X`` for ``k < K`` as a ``K x N x F`` array."""
    signal = as_features(signal)
    check_same_length("signal", shift.dim, signal.shape[0], TrainingError)
    stack = np.empty((K, *signal.shape))
    stack[0] = signal
    for k in range(1, K):
        stack[k] = shift.apply(stack[k - 1])
    return stack


def forward(
    model: TnnModel,
    shift: ShiftOperator,
    inputs: np.ndarray,
    input_stack: np.ndarray | None = None,
) -> tuple[np.ndarray, ForwardCache]:
    """Run the network on an ``N x F_0`` signal.

    Args:
        model: Network parameters.
        shift: Shift operator ``P``.
        inputs: Input signal (a 1-D signal is treated as one feature).
        input_stack: Precomputed ``diffusion_stack(shift, inputs, K)``; the
            first layer's stack does not depend on the parameters.

    Returns:
        ``(output, cache)`` with output of shape ``N x F_L``.
    """
    x = as_features(inputs)
    activation = model.activation
    stacks: list[np.ndarray] = []
    pre_activations: list[np.ndarray] = []
    for index, layer in enumerate(model.layers):
        if x.shape[1] != layer.f_in:
            raise TrainingError.build(
                "width_mismatch", "Layer {layer} expects {expected} features, got {actual}",
                layer=index, expected=layer.f_in, actual=x.shape[1],
            )
        stack = input_stack if index == 0 and input_stack is not None else None
        if stack is None:
            stack = diffusion_stack(shift, x, layer.K)
        pre = np.einsum("kni,kio->no", stack, layer.taps)
        stacks.append(stack)
        pre_activations.append(pre)
        x = activation(pre)
    cache = ForwardCache(
        model=model,
        version=model.version,
        shift=shift,
        stacks=stacks,
        pre_activations=pre_activations,
    )
    return x, cache


def backward(
    model: TnnModel, cache: ForwardCache, grad_output: np.ndarray
) -> list[np.ndarray]:
    """Gradients ``dL/dH_{l,k}`` given ``dL/dX_L``.

    ``G_l = dL/dX_{l+1} * sigma'(U_l)``, ``dL/dH_{l,k} = Z_k^T G_l`` and
    ``dL/dX_l = sum_k (P^T)^k G_l H_{l,k}^T``, the last evaluated in Horner
    form with one transposed shift per tap.

    Raises:
        TrainingError: ``stale_cache`` if ``cache`` came from another model
            or from parameters that have since been updated.
    """
    if cache.model is not model or cache.version != model.version:
        raise TrainingError.build(
            "stale_cache",
            "Forward cache is stale (cache version {cached}, model version {current})",
            cached=cache.version, current=model.version,
        )
    activation = model.activation
    upstream = as_features(grad_output)
    gradients: list[np.ndarray] = [np.empty(0)] * len(model.layers)
    for index in range(len(model.layers) - 1, -1, -1):
        taps = model.layers[index].taps
        local = upstream * activation.derivative(cache.pre_activations[index])
        gradients[index] = np.einsum("kni,no->kio", cache.stacks[index], local)
        if index == 0:
            break
        accumulated = local @ taps[-1].T
        for k in range(taps.shape[0] - 2, -1, -1):
            accumulated = cache.shift.apply_transpose(accumulated) + local @ taps[k].T
        upstream = accumulated
    return gradients
