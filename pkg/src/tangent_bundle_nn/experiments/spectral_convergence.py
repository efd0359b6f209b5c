"""Leading eigenvalues of the sphere sheaf Laplacian as ``n`` grows.

The connection Laplacian on the 2-sphere has eigenvalues ``l(l+1) - 1`` with
multiplicity ``2(2l+1)``: a cluster of 6 at ``l = 1`` and of 10 at ``l = 2``
whose mean ratio is 5.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from tangent_bundle_nn.core.errors import TangentBundleError
from tangent_bundle_nn.experiments.config import ExperimentConfig
from tangent_bundle_nn.experiments.convergence import check_ascending
from tangent_bundle_nn.experiments.io import write_meta, write_rows
from tangent_bundle_nn.experiments.table1 import error_tag
from tangent_bundle_nn.geometry.sampling import sample_sphere
from tangent_bundle_nn.models.results import ExperimentReport, SpectralRow
from tangent_bundle_nn.sheaf.assembly import build_sheaf
from tangent_bundle_nn.spectral.spectrum import eigendecompose

logger = logging.getLogger(__name__)

FIRST_CLUSTER = 6
SECOND_CLUSTER = 10


def cluster_diagnostics(eigenvalues: np.ndarray) -> tuple[float | None, float | None]:
    """Relative spread of the first cluster and the second-to-first cluster mean ratio."""
    spread = ratio = None
    if eigenvalues.size >= FIRST_CLUSTER:
        first = eigenvalues[:FIRST_CLUSTER]
        spread = float((first.max() - first.min()) / first.mean())
        if eigenvalues.size >= FIRST_CLUSTER + SECOND_CLUSTER:
            second = eigenvalues[FIRST_CLUSTER : FIRST_CLUSTER + SECOND_CLUSTER]
            ratio = float(second.mean() / first.mean())
    return spread, ratio


def spectral_row(config: ExperimentConfig, n: int, seed: int) -> SpectralRow:
    try:
        sheaf = build_sheaf(sample_sphere(n, seed), config.epsilon, config.epsilon_pca,
                            config.gamma)
        eigenvalues = eigendecompose(sheaf, count=config.spectral_count).eigenvalues
    except TangentBundleError as e:
        return SpectralRow(n=n, seed=seed, eigenvalues=(), first_cluster_spread=None,
                           cluster_ratio=None, error=error_tag(e))
    spread, ratio = cluster_diagnostics(eigenvalues)
    logger.debug("n=%d seed=%d spread=%s ratio=%s", n, seed, spread, ratio)
    return SpectralRow(
        n=n, seed=seed, eigenvalues=tuple(float(v) for v in eigenvalues),
        first_cluster_spread=spread, cluster_ratio=ratio,
    )


def run_spectral_convergence(config: ExperimentConfig) -> ExperimentReport[SpectralRow]:
    """One row per ``(n, sample seed)``, ordered by ``n`` then seed."""
    check_ascending(config.n_list)
    grid = list(itertools.product(config.n_list, config.sample_seeds))
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda args: spectral_row(config, *args), grid))

    report: ExperimentReport[SpectralRow] = ExperimentReport(rows=rows)
    for row in rows:
        if row.error is not None:
            logger.warning("Spectrum failed: n=%d seed=%d: %s", row.n, row.seed, row.error)
            report.add_trial_error(field=f"n={row.n}", message=row.error,
                                   context={"seed": row.seed})
    return report


def write_spectral_convergence(
    report: ExperimentReport[SpectralRow], config: ExperimentConfig, directory: str | Path
) -> Path:
    directory = Path(directory)
    columns = ["n", "seed", "first_cluster_spread", "cluster_ratio"]
    columns += list(itertools.chain.from_iterable(
        (f"lambda_{i + 1}", f"ratio_{i + 1}") for i in range(config.spectral_count)
    ))
    columns.append("error")
    write_rows((row.to_dict() for row in report.rows), directory / "spectral.csv", columns)
    write_meta(config, directory, experiment="spectral-convergence", failures=report.failures)
    return directory
