"""ADAM for TNN filter taps."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tangent_bundle_nn.core.errors import TrainingError
from tangent_bundle_nn.nn.model import TnnModel


@dataclass
class AdamState:
    """First/second moments per parameter plus hyperparameters."""

    lr: float = 1e-2
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    first_moments: list[np.ndarray] = field(default_factory=list)
    second_moments: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def for_model(cls, model: TnnModel, **hyperparameters: float) -> AdamState:
        params = model.parameters()
        return cls(
            first_moments=[np.zeros_like(p) for p in params],
            second_moments=[np.zeros_like(p) for p in params],
            **hyperparameters,
        )


def adam_step(model: TnnModel, gradients: list[np.ndarray], state: AdamState) -> None:
    """Update ``model`` in place with bias-corrected ADAM moments."""
    params = model.parameters()
    if not (len(params) == len(gradients) == len(state.first_moments)):
        raise TrainingError.build(
            "dimension_mismatch",
            "Got {grads} gradients and {moments} moments for {params} parameters",
            grads=len(gradients), moments=len(state.first_moments), params=len(params),
        )
    state.step += 1
    correction1 = 1.0 - state.beta1**state.step
    correction2 = 1.0 - state.beta2**state.step
    for param, grad, m, v in zip(
        params, gradients, state.first_moments, state.second_moments, strict=True
    ):
        if grad.shape != param.shape or m.shape != param.shape:
            raise TrainingError.build(
                "dimension_mismatch", "Gradient shape {grad} does not match parameter {param}",
                grad=grad.shape, param=param.shape,
            )
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad**2
        param -= state.lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)
    model.version += 1
