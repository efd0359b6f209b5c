"""A single DD-TNN denoising run with all of its artifacts."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from tangent_bundle_nn.data.csv_source import write_field_csv
from tangent_bundle_nn.experiments.config import ExperimentConfig
from tangent_bundle_nn.experiments.io import write_meta
from tangent_bundle_nn.experiments.table1 import noise_stream_seed, trial_seed
from tangent_bundle_nn.filters.shift import shift_operator
from tangent_bundle_nn.geometry.sampling import add_awgn, rotational_field, sample_sphere
from tangent_bundle_nn.nn.checkpoint import save_checkpoint, write_loss_trace
from tangent_bundle_nn.nn.model import init_model
from tangent_bundle_nn.nn.training import TrainingOutcome, train_denoiser
from tangent_bundle_nn.sheaf.assembly import build_sheaf
from tangent_bundle_nn.sheaf.io import save_sheaf
from tangent_bundle_nn.sheaf.signals import lift_signal, sample_field

logger = logging.getLogger(__name__)


@dataclass
class DenoiseRun:
    outcome: TrainingOutcome
    directory: Path


def run_denoise(config: ExperimentConfig, directory: str | Path) -> DenoiseRun:
    """Train on the first ``n``, ``tau`` and seeds of ``config``.

    Writes ``sheaf/``, ``noisy.csv``, ``denoised.csv``, ``loss.csv``,
    ``checkpoint.json`` and ``meta.json`` under ``directory``.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    n, tau = config.n_list[0], config.tau_list[0]
    sample_seed, noise_seed = config.sample_seeds[0], config.noise_seeds[0]
    seed = trial_seed(sample_seed, noise_seed)

    cloud = sample_sphere(n, sample_seed)
    clean_field = rotational_field(cloud)
    noisy_field = add_awgn(clean_field, tau, noise_stream_seed(sample_seed, noise_seed))
    sheaf = build_sheaf(cloud, config.epsilon, config.epsilon_pca, config.gamma)
    shift = shift_operator(sheaf, config.shift_method)

    model = init_model(config.model_widths(1), config.taps, config.nonlinearity, seed)
    outcome = train_denoiser(
        model, shift, sample_field(sheaf, noisy_field), config.epochs, config.lr, seed,
        clean=sample_field(sheaf, clean_field),
    )
    logger.info("Denoised n=%d tau=%g: eval_mse=%.3e", n, tau, outcome.eval_mse)

    save_sheaf(sheaf, directory / "sheaf")
    write_field_csv(cloud, noisy_field, directory / "noisy.csv")
    write_field_csv(cloud, lift_signal(sheaf, outcome.output[:, 0]), directory / "denoised.csv")
    write_loss_trace(outcome, directory / "loss.csv")
    save_checkpoint(outcome.model, directory / "checkpoint.json", seed=seed, epochs=config.epochs)
    write_meta(
        config, directory, experiment="denoise", n=n, tau=tau,
        eval_mse=outcome.eval_mse, train_mse=outcome.train_mse,
    )
    return DenoiseRun(outcome=outcome, directory=directory)
