"""DD-TNN networks, gradients, ADAM training and the MNN baseline."""

from tangent_bundle_nn.nn.activations import Identity, NonlinearityFactory, ReLU, Tanh
from tangent_bundle_nn.nn.checkpoint import load_checkpoint, save_checkpoint, write_loss_trace
from tangent_bundle_nn.nn.model import (
    ForwardCache,
    TnnLayerParams,
    TnnModel,
    backward,
    diffusion_stack,
    forward,
    init_model,
)
from tangent_bundle_nn.nn.optim import AdamState, adam_step
from tangent_bundle_nn.nn.training import (
    MnnOutcome,
    TrainingOutcome,
    evaluate_mse,
    mnn_baseline,
    train_denoiser,
)

__all__ = [
    "AdamState",
    "ForwardCache",
    "Identity",
    "MnnOutcome",
    "NonlinearityFactory",
    "ReLU",
    "Tanh",
    "TnnLayerParams",
    "TnnModel",
    "TrainingOutcome",
    "adam_step",
    "backward",
    "diffusion_stack",
    "evaluate_mse",
    "forward",
    "init_model",
    "load_checkpoint",
    "mnn_baseline",
    "save_checkpoint",
    "train_denoiser",
    "write_loss_trace",
]
