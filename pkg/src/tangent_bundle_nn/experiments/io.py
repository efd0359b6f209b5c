"""CSV and JSON outputs of experiment runs."""

from __future__ import annotations

import csv
import json
import logging
import subprocess
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

from tangent_bundle_nn.data.csv_source import format_float
from tangent_bundle_nn.experiments.config import ExperimentConfig

logger = logging.getLogger(__name__)

RESULT_COLUMNS = [
    "experiment_id",
    "n",
    "tau",
    "seed_sample",
    "seed_noise",
    "model",
    "eval_mse",
    "train_mse_final",
    "wallclock_s",
    "error",
]
SUMMARY_COLUMNS = ["n", "tau", "model", "mean", "std", "trials", "failures"]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_rows(rows: Iterable[Mapping[str, Any]], path: str | Path, columns: list[str]) -> Path:
    """Write dict rows with a fixed column order; ``None`` becomes an empty cell."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
    return path


def git_revision(cwd: str | Path | None = None) -> str | None:
    """Current commit hash, or ``None`` outside a git checkout."""
    try:
        completed = subprocess.run(
            ["git", "rev-parse", "HEAD"],
            cwd=cwd,
            capture_output=True,
            text=True,
            check=True,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError):
        return None
    return completed.stdout.strip() or None


def write_meta(
    config: ExperimentConfig, directory: str | Path, **extra: Any
) -> Path:
    """``meta.json`` with the git hash and an echo of the config."""
    from tangent_bundle_nn import __version__

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    meta = {
        "package_version": __version__,
        "git_hash": git_revision(),
        "config": config.model_dump(mode="json"),
        **extra,
    }
    path = directory / "meta.json"
    path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("Wrote %s", path)
    return path
