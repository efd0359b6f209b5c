"""Sphere vector-field denoising: DD-TNN against the MNN baseline.

Every ``(n, tau, sample seed, noise seed)`` trial samples a sphere cloud,
builds its sheaf, adds ambient noise to the rotational field and trains
both models on the noisy field. Trials run on a thread pool and are merged
in ``(n, tau, seed, model)`` order.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from tangent_bundle_nn.core.errors import TangentBundleError
from tangent_bundle_nn.experiments.config import ExperimentConfig
from tangent_bundle_nn.experiments.io import (
    RESULT_COLUMNS,
    SUMMARY_COLUMNS,
    write_meta,
    write_rows,
)
from tangent_bundle_nn.filters.shift import shift_operator
from tangent_bundle_nn.geometry.sampling import add_awgn, rotational_field, sample_sphere
from tangent_bundle_nn.models.enums import ModelTag
from tangent_bundle_nn.models.results import ExperimentReport, ResultRow, SummaryRow
from tangent_bundle_nn.nn.model import init_model
from tangent_bundle_nn.nn.training import mnn_baseline, train_denoiser
from tangent_bundle_nn.sheaf.assembly import build_sheaf
from tangent_bundle_nn.sheaf.signals import sample_field

logger = logging.getLogger(__name__)


def trial_seed(sample_seed: int, noise_seed: int) -> int:
    """Initialization seed of a trial, independent of both data streams."""
    return int(np.random.SeedSequence([sample_seed, noise_seed]).generate_state(1)[0])


def noise_stream_seed(sample_seed: int, noise_seed: int) -> int:
    """Seed of the noise added to one sampling realization.

    Every ``(sample, noise)`` pair draws its own noise, so the same noise
    seed gives unrelated draws on different clouds.
    """
    sequence = np.random.SeedSequence([sample_seed, noise_seed], spawn_key=(1,))
    return int(sequence.generate_state(1)[0])


def error_tag(error: TangentBundleError) -> str:
    return f"{error.type}: {error.message()}"


@dataclass
class Table1Result:
    report: ExperimentReport[ResultRow]
    summary: list[SummaryRow]


def _failed_rows(
    config: ExperimentConfig, n: int, tau: float, sample_seed: int, noise_seed: int, tag: str
) -> list[ResultRow]:
    return [
        ResultRow(
            experiment_id=config.experiment_id, n=n, tau=tau, seed_sample=sample_seed,
            seed_noise=noise_seed, model=model, eval_mse=None, train_mse_final=None,
            wallclock_s=0.0, error=tag,
        )
        for model in (ModelTag.DDTNN, ModelTag.MNN)
    ]


def run_trial(
    config: ExperimentConfig, n: int, tau: float, sample_seed: int, noise_seed: int
) -> list[ResultRow]:
    """Train and evaluate both models on one noisy sample; failures become tagged rows."""
    init_seed = trial_seed(sample_seed, noise_seed)
    base: dict[str, Any] = {
        "experiment_id": config.experiment_id,
        "n": n,
        "tau": tau,
        "seed_sample": sample_seed,
        "seed_noise": noise_seed,
    }
    try:
        cloud = sample_sphere(n, sample_seed)
        clean_field = rotational_field(cloud)
        noisy_field = add_awgn(clean_field, tau, noise_stream_seed(sample_seed, noise_seed))
        sheaf = build_sheaf(cloud, config.epsilon, config.epsilon_pca, config.gamma)
    except TangentBundleError as e:
        return _failed_rows(config, n, tau, sample_seed, noise_seed, error_tag(e))

    rows: list[ResultRow] = []
    started = time.perf_counter()
    try:
        shift = shift_operator(sheaf, config.shift_method)
        model = init_model(config.model_widths(1), config.taps, config.nonlinearity, init_seed)
        outcome = train_denoiser(
            model, shift, sample_field(sheaf, noisy_field), config.epochs, config.lr, init_seed,
            clean=sample_field(sheaf, clean_field),
        )
        rows.append(ResultRow(
            **base, model=ModelTag.DDTNN, eval_mse=outcome.eval_mse,
            train_mse_final=outcome.train_mse, wallclock_s=time.perf_counter() - started,
        ))
    except TangentBundleError as e:
        rows.append(ResultRow(
            **base, model=ModelTag.DDTNN, eval_mse=None, train_mse_final=None,
            wallclock_s=time.perf_counter() - started, error=error_tag(e),
        ))

    started = time.perf_counter()
    try:
        mnn = mnn_baseline(
            cloud, noisy_field, config.taps, config.epochs, config.lr, init_seed,
            clean=clean_field, weights=sheaf.weights, epsilon=sheaf.epsilon,
            nonlinearity=config.nonlinearity, shift_method=config.shift_method,
        )
        rows.append(ResultRow(
            **base, model=ModelTag.MNN, eval_mse=mnn.eval_mse,
            train_mse_final=mnn.training.train_mse, wallclock_s=time.perf_counter() - started,
        ))
    except TangentBundleError as e:
        rows.append(ResultRow(
            **base, model=ModelTag.MNN, eval_mse=None, train_mse_final=None,
            wallclock_s=time.perf_counter() - started, error=error_tag(e),
        ))
    return rows


def summarize(rows: list[ResultRow]) -> list[SummaryRow]:
    """Mean and population std of eval MSE per ``(n, tau, model)`` cell."""
    cells: dict[tuple[int, float, ModelTag], list[ResultRow]] = {}
    for row in rows:
        cells.setdefault((row.n, row.tau, row.model), []).append(row)
    summary = []
    for (n, tau, model), members in sorted(cells.items(), key=lambda item: (
        item[0][0], item[0][1], item[0][2].value
    )):
        values = np.array([r.eval_mse for r in members if r.eval_mse is not None])
        summary.append(SummaryRow(
            n=n, tau=tau, model=model,
            mean=float(values.mean()) if values.size else None,
            std=float(values.std()) if values.size else None,
            trials=len(members),
            failures=sum(r.failed for r in members),
        ))
    return summary


def run_table1(config: ExperimentConfig) -> Table1Result:
    """Run every trial of the grid and summarize it per cell."""
    grid = list(itertools.product(
        config.n_list, config.tau_list, config.sample_seeds, config.noise_seeds
    ))
    logger.info("Running %d denoising trials on %d workers", len(grid), config.workers)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        batches = list(pool.map(lambda args: run_trial(config, *args), grid))

    report: ExperimentReport[ResultRow] = ExperimentReport()
    report.rows = sorted(itertools.chain.from_iterable(batches), key=lambda r: r.sort_key)
    for row in report.rows:
        if row.failed:
            logger.warning(
                "Trial failed: n=%d tau=%g seeds=(%d, %d) model=%s: %s",
                row.n, row.tau, row.seed_sample, row.seed_noise, row.model.value, row.error,
            )
            report.add_trial_error(
                field=f"{row.model.value}/n={row.n}/tau={row.tau:g}",
                message=row.error or "",
                context={"seed_sample": row.seed_sample, "seed_noise": row.seed_noise},
            )
    return Table1Result(report=report, summary=summarize(report.rows))


def write_table1(result: Table1Result, config: ExperimentConfig, directory: str | Path) -> Path:
    """``results.csv``, ``summary.csv`` and ``meta.json`` under ``directory``."""
    directory = Path(directory)
    write_rows((row.to_dict() for row in result.report.rows), directory / "results.csv",
               RESULT_COLUMNS)
    write_rows((row.to_dict() for row in result.summary), directory / "summary.csv",
               SUMMARY_COLUMNS)
    write_meta(config, directory, experiment="table1", failures=result.report.failures)
    return directory
