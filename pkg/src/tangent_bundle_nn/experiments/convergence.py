"""Convergence of the discretized network as the sample grows.

For each seed one master cloud of ``n_max`` points is drawn; the cloud at
size ``n`` is its first ``n`` points and the first ``eval_points`` points are
shared by every size. A fixed untrained network is run on the rotational
field at each size, its output lifted to ambient space and compared at the
shared points against the ``n_max`` run.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tangent_bundle_nn.core.errors import ConfigurationError, TangentBundleError
from tangent_bundle_nn.experiments.config import ExperimentConfig
from tangent_bundle_nn.experiments.io import write_meta, write_rows
from tangent_bundle_nn.experiments.table1 import error_tag
from tangent_bundle_nn.filters.shift import shift_operator
from tangent_bundle_nn.geometry.sampling import rotational_field, sample_sphere
from tangent_bundle_nn.models.geometry import PointCloud
from tangent_bundle_nn.models.results import ConvergenceRow, ExperimentReport
from tangent_bundle_nn.nn.model import TnnModel, forward, init_model
from tangent_bundle_nn.sheaf.assembly import build_sheaf
from tangent_bundle_nn.sheaf.signals import lift_signal, sample_field

logger = logging.getLogger(__name__)

CONVERGENCE_COLUMNS = ["n", "seed", "discrepancy", "error"]
MEDIAN_COLUMNS = ["n", "median_discrepancy", "seeds"]


@dataclass
class ConvergenceResult:
    report: ExperimentReport[ConvergenceRow]
    medians: list[tuple[int, float | None, int]]


def check_ascending(n_list: list[int]) -> None:
    if any(b <= a for a, b in zip(n_list, n_list[1:], strict=False)):
        raise ConfigurationError(
            ValueError(f"n_list must be strictly ascending, got {n_list}"),
            context={"field": "n_list"},
        )


def lifted_output(
    cloud: PointCloud, network: TnnModel, config: ExperimentConfig
) -> np.ndarray:
    """Ambient lift of the network output on the rotational field, all points."""
    sheaf = build_sheaf(cloud, config.epsilon, config.epsilon_pca, config.gamma)
    shift = shift_operator(sheaf, config.shift_method)
    output, _ = forward(network, shift, sample_field(sheaf, rotational_field(cloud)))
    return lift_signal(sheaf, output[:, 0]).values


def _seed_rows(
    config: ExperimentConfig, network: TnnModel, seed: int
) -> list[ConvergenceRow]:
    n_max = config.n_list[-1]
    m = config.eval_points
    master = sample_sphere(n_max, seed)
    try:
        reference = lifted_output(master, network, config)[:m]
    except TangentBundleError as e:
        return [ConvergenceRow(n=n, seed=seed, discrepancy=None, error=error_tag(e))
                for n in config.n_list]

    rows = []
    for n in config.n_list:
        if n == n_max:
            rows.append(ConvergenceRow(n=n, seed=seed, discrepancy=0.0))
            continue
        try:
            lifted = lifted_output(master.subset(n), network, config)[:m]
        except TangentBundleError as e:
            rows.append(ConvergenceRow(n=n, seed=seed, discrepancy=None, error=error_tag(e)))
            continue
        discrepancy = float(np.sum((lifted - reference) ** 2) / m)
        logger.debug("seed=%d n=%d discrepancy=%.3e", seed, n, discrepancy)
        rows.append(ConvergenceRow(n=n, seed=seed, discrepancy=discrepancy))
    return rows


def run_convergence(config: ExperimentConfig) -> ConvergenceResult:
    """Per-seed discrepancies and their median per ``n``."""
    check_ascending(config.n_list)
    network = init_model(
        config.model_widths(1), config.taps, config.nonlinearity, seed=config.filter_seed
    )
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        batches = list(pool.map(
            lambda seed: _seed_rows(config, network, seed), config.convergence_seeds
        ))

    report: ExperimentReport[ConvergenceRow] = ExperimentReport()
    report.rows = sorted((row for batch in batches for row in batch),
                         key=lambda r: (r.n, r.seed))
    for row in report.rows:
        if row.error is not None:
            logger.warning("Convergence trial failed: n=%d seed=%d: %s", row.n, row.seed,
                           row.error)
            report.add_trial_error(field=f"n={row.n}", message=row.error,
                                   context={"seed": row.seed})

    medians = []
    for n in config.n_list:
        values = [r.discrepancy for r in report.rows if r.n == n and r.discrepancy is not None]
        medians.append((n, float(np.median(values)) if values else None, len(values)))
    return ConvergenceResult(report=report, medians=medians)


def write_convergence(
    result: ConvergenceResult, config: ExperimentConfig, directory: str | Path
) -> Path:
    directory = Path(directory)
    write_rows((row.to_dict() for row in result.report.rows), directory / "convergence.csv",
               CONVERGENCE_COLUMNS)
    write_rows(
        ({"n": n, "median_discrepancy": median, "seeds": count}
         for n, median, count in result.medians),
        directory / "convergence_median.csv",
        MEDIAN_COLUMNS,
    )
    write_meta(config, directory, experiment="convergence", failures=result.report.failures)
    return directory
