"""Spectrum export: ``eigenvalues.csv`` plus column-major ``eigenvectors.bin``."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from tangent_bundle_nn.core.errors import SpectralError
from tangent_bundle_nn.data.csv_source import format_float
from tangent_bundle_nn.models.spectral import SheafSpectrum

EIGENVALUES_FILE = "eigenvalues.csv"
EIGENVECTORS_FILE = "eigenvectors.bin"
SIDECAR_FILE = "eigenvectors.json"
DTYPE = "<f8"


def export_spectrum(spectrum: SheafSpectrum, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    with open(directory / EIGENVALUES_FILE, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["index", "lambda"])
        writer.writerows(
            [i + 1, format_float(value)] for i, value in enumerate(spectrum.eigenvalues)
        )

    # Transposed C order is column-major order of the eigenvector matrix.
    np.ascontiguousarray(spectrum.eigenvectors.T, dtype=DTYPE).tofile(
        directory / EIGENVECTORS_FILE
    )
    sidecar = {
        "rows": spectrum.dim,
        "cols": spectrum.count,
        "dtype": DTYPE,
        "order": "F",
        "n_nodes": spectrum.n_nodes,
        "d_hat": spectrum.d_hat,
        "metric": [float(v) for v in spectrum.metric],
    }
    (directory / SIDECAR_FILE).write_text(json.dumps(sidecar) + "\n", encoding="utf-8")
    return directory


def load_spectrum(directory: str | Path) -> SheafSpectrum:
    directory = Path(directory)
    try:
        sidecar = json.loads((directory / SIDECAR_FILE).read_text(encoding="utf-8"))
        with open(directory / EIGENVALUES_FILE, encoding="utf-8", newline="") as f:
            eigenvalues = np.array([float(row["lambda"]) for row in csv.DictReader(f)])
        rows, cols = int(sidecar["rows"]), int(sidecar["cols"])
        flat = np.fromfile(directory / EIGENVECTORS_FILE, dtype=sidecar.get("dtype", DTYPE))
        eigenvectors = flat.reshape(cols, rows).T.astype(np.float64)
    except (OSError, KeyError, ValueError) as e:
        raise SpectralError.from_exception("serialization", e, path=str(directory)) from e
    return SheafSpectrum(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        metric=np.asarray(sidecar["metric"], dtype=np.float64),
        n_nodes=int(sidecar["n_nodes"]),
        d_hat=int(sidecar["d_hat"]),
    )
