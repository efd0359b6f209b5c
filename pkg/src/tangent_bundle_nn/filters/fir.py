"""FIR tangent-bundle filters ``sum_k h_k P^k x``."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from tangent_bundle_nn.core.errors import FilterError, check_same_length, error_from_validation
from tangent_bundle_nn.filters.shift import ShiftOperator
from tangent_bundle_nn.models.spectral import FirFrequencyResponse


class FirFilter(BaseModel):
    """Taps ``h_0 .. h_{K-1}`` with unit sampling step."""

    model_config = ConfigDict(frozen=True)

    taps: tuple[float, ...]

    @field_validator("taps", mode="before")
    @classmethod
    def _check_taps(cls, value: Any) -> tuple[float, ...]:
        taps = tuple(float(v) for v in np.asarray(value, dtype=np.float64).ravel())
        if not taps:
            raise FilterError.build("invalid_taps", "A filter needs at least one tap")
        if not all(np.isfinite(taps)):
            raise FilterError.build("invalid_taps", "Filter taps must be finite")
        return taps

    @property
    def K(self) -> int:
        return len(self.taps)

    def frequency_response(self) -> FirFrequencyResponse:
        return FirFrequencyResponse(taps=self.taps)


def apply_fir(shift: ShiftOperator, fir: FirFilter, signal: np.ndarray) -> np.ndarray:
    """``sum_k h_k P^k x`` by repeated application ``z_{k+1} = P z_k``.

    ``signal`` may be a single feature (``n*d``) or ``n*d x F``; each column
    is filtered independently.
    """
    signal = np.asarray(signal, dtype=np.float64)
    check_same_length("signal", shift.dim, signal.shape[0], FilterError)
    z = signal
    output = fir.taps[0] * z
    for tap in fir.taps[1:]:
        z = shift.apply(z)
        output = output + tap * z
    return output


def save_filter(fir: FirFilter, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps({"taps": list(fir.taps)}) + "\n", encoding="utf-8")
    return path


def load_filter(path: str | Path) -> FirFilter:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        return FirFilter(taps=payload["taps"])
    except ValidationError as e:
        raise error_from_validation(e, FilterError) from e
    except (OSError, KeyError, ValueError) as e:
        raise FilterError.from_exception("serialization", e, path=str(path)) from e
