"""Sheaf directory format: ``bases.csv``, ``edges.csv`` and ``meta.json``.

Floats are written with 17 significant digits so that loading rebuilds the
exact same weights and transports, and therefore the same Laplacian.
"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

import numpy as np

from tangent_bundle_nn.core.errors import SheafError
from tangent_bundle_nn.data.csv_source import format_float
from tangent_bundle_nn.models.sheaf import DENSE_CAP, OrthogonalSheaf
from tangent_bundle_nn.sheaf.assembly import assemble_laplacian
from tangent_bundle_nn.sheaf.kernel import symmetric_csr, upper_edges
from tangent_bundle_nn.sheaf.transport import TransportMaps

logger = logging.getLogger(__name__)

BASES_FILE = "bases.csv"
EDGES_FILE = "edges.csv"
META_FILE = "meta.json"


def save_sheaf(sheaf: OrthogonalSheaf, directory: str | Path) -> Path:
    """Write ``sheaf`` to ``directory`` (created if needed)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    d_hat = sheaf.d_hat

    with open(directory / BASES_FILE, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([f"b{k + 1}" for k in range(d_hat)])
        stacked = sheaf.bases.reshape(sheaf.n * sheaf.p, d_hat)
        writer.writerows([format_float(v) for v in row] for row in stacked)

    edges, weights = upper_edges(sheaf.weights)
    maps = sheaf.transports.reshape(-1, d_hat * d_hat)
    with open(directory / EDGES_FILE, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(
            ["i", "j", "w"] + [f"t{a + 1}{b + 1}" for a in range(d_hat) for b in range(d_hat)]
        )
        for (i, j), w, block in zip(edges, weights, maps, strict=True):
            writer.writerow([int(i), int(j), format_float(w)] + [format_float(v) for v in block])

    meta = {
        "n": sheaf.n,
        "p": sheaf.p,
        "d_hat": d_hat,
        "epsilon": sheaf.epsilon,
        "epsilon_pca": sheaf.epsilon_pca,
        "gamma": sheaf.gamma,
        "seed": sheaf.seed,
    }
    (directory / META_FILE).write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    logger.info("Saved sheaf (n=%d, d_hat=%d) to %s", sheaf.n, d_hat, directory)
    return directory


def _read_rows(path: Path) -> tuple[list[str], list[list[str]]]:
    if not path.exists():
        raise SheafError.build("serialization", "Missing sheaf file {path}", path=str(path))
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, [])
        return header, list(reader)


def load_sheaf(directory: str | Path, *, dense_cap: int = DENSE_CAP) -> OrthogonalSheaf:
    """Rebuild a sheaf written by :func:`save_sheaf`."""
    directory = Path(directory)
    meta_path = directory / META_FILE
    if not meta_path.exists():
        raise SheafError.build("serialization", "Missing sheaf file {path}", path=str(meta_path))
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        n, p, d_hat = int(meta["n"]), int(meta["p"]), int(meta["d_hat"])

        _, base_rows = _read_rows(directory / BASES_FILE)
        bases = np.array(base_rows, dtype=np.float64).reshape(n, p, d_hat)

        _, edge_rows = _read_rows(directory / EDGES_FILE)
        table = np.array(edge_rows, dtype=np.float64).reshape(-1, 3 + d_hat * d_hat)
    except SheafError:
        raise
    except (KeyError, ValueError) as e:
        raise SheafError.from_exception("serialization", e, path=str(directory)) from e

    edges = table[:, :2].astype(np.int64)
    weights = symmetric_csr(n, edges, table[:, 2])
    transports = TransportMaps(edges=edges, maps=table[:, 3:].reshape(-1, d_hat, d_hat))
    sheaf = assemble_laplacian(
        weights, bases, transports, float(meta["epsilon"]),
        dense_cap=dense_cap,
        epsilon_pca=float(meta["epsilon_pca"]),
        gamma=float(meta["gamma"]),
        seed=meta.get("seed"),
    )
    assert isinstance(sheaf, OrthogonalSheaf)
    return sheaf
