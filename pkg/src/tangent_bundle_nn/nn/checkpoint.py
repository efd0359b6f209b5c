"""JSON checkpoints and CSV loss traces."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

import numpy as np

from tangent_bundle_nn.core.errors import TrainingError
from tangent_bundle_nn.data.csv_source import format_float
from tangent_bundle_nn.models.enums import Nonlinearity
from tangent_bundle_nn.nn.model import TnnLayerParams, TnnModel
from tangent_bundle_nn.nn.training import TrainingOutcome


def save_checkpoint(
    model: TnnModel, path: str | Path, *, seed: int | None = None, epochs: int = 0
) -> Path:
    """Layer shapes, row-major taps, nonlinearity tag, seed and epoch count."""
    path = Path(path)
    payload: dict[str, Any] = {
        "nonlinearity": model.nonlinearity.value,
        "seed": seed,
        "epochs": epochs,
        "layers": [
            {"shape": list(layer.taps.shape), "taps": layer.taps.ravel(order="C").tolist()}
            for layer in model.layers
        ],
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def load_checkpoint(path: str | Path) -> tuple[TnnModel, dict[str, Any]]:
    """Inverse of :func:`save_checkpoint`; returns the model and the seed/epochs metadata."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        layers = [
            TnnLayerParams(taps=np.asarray(entry["taps"], dtype=np.float64).reshape(entry["shape"]))
            for entry in payload["layers"]
        ]
        model = TnnModel(layers=layers, nonlinearity=Nonlinearity(payload["nonlinearity"]))
    except TrainingError:
        raise
    except (OSError, KeyError, ValueError) as e:
        raise TrainingError.from_exception("serialization", e, path=str(path)) from e
    return model, {"seed": payload.get("seed"), "epochs": payload.get("epochs", 0)}


def write_loss_trace(outcome: TrainingOutcome, path: str | Path) -> Path:
    """CSV with columns ``epoch, train_mse, eval_mse`` (eval empty without a clean signal)."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["epoch", "train_mse", "eval_mse"])
        for epoch, loss in enumerate(outcome.losses):
            eval_value = (
                format_float(outcome.eval_losses[epoch]) if outcome.eval_losses is not None else ""
            )
            writer.writerow([epoch, format_float(loss), eval_value])
    return path
