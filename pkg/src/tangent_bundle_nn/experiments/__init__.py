"""Experiment harness: denoising table, convergence and spectral studies."""

from tangent_bundle_nn.experiments.config import ExperimentConfig, load_config
from tangent_bundle_nn.experiments.convergence import (
    ConvergenceResult,
    run_convergence,
    write_convergence,
)
from tangent_bundle_nn.experiments.denoise import DenoiseRun, run_denoise
from tangent_bundle_nn.experiments.spectral_convergence import (
    cluster_diagnostics,
    run_spectral_convergence,
    write_spectral_convergence,
)
from tangent_bundle_nn.experiments.table1 import (
    Table1Result,
    run_table1,
    run_trial,
    summarize,
    write_table1,
)

__all__ = [
    "ConvergenceResult",
    "DenoiseRun",
    "ExperimentConfig",
    "Table1Result",
    "cluster_diagnostics",
    "load_config",
    "run_convergence",
    "run_denoise",
    "run_spectral_convergence",
    "run_table1",
    "run_trial",
    "summarize",
    "write_convergence",
    "write_spectral_convergence",
    "write_table1",
]
