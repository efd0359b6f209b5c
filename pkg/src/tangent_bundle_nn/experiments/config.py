"""Experiment configuration loaded from TOML."""

from __future__ import annotations

import tomllib
from pathlib import Path
from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from tangent_bundle_nn.core.errors import ConfigurationError
from tangent_bundle_nn.models.enums import Nonlinearity, ShiftMethod

MIN_SPHERE_POINTS = 50


class ExperimentConfig(BaseModel):
    """Every knob of the denoising and convergence experiments.

    TOML keys must match the field names exactly; unknown keys are rejected.
    ``widths`` lists the hidden feature widths, so a model has
    ``len(widths) + 1`` layers and ``layers`` must agree with it.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment_id: str = "table1"
    # manifold
    n_list: list[int] = Field(default_factory=lambda: [200, 800], min_length=1)
    sample_seeds: list[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], min_length=1)
    noise_seeds: list[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], min_length=1)
    # sheaf
    epsilon: float | None = Field(default=None, gt=0)
    epsilon_pca: float | None = Field(default=None, gt=0)
    gamma: float = Field(default=0.9, gt=0, le=1)
    shift_method: ShiftMethod = ShiftMethod.EIG
    # noise
    tau_list: list[float] = Field(default_factory=lambda: [1e-2, 5e-2, 1e-1], min_length=1)
    # model
    layers: int = Field(default=1, ge=1)
    taps: int = Field(default=5, ge=1)
    widths: list[int] = Field(default_factory=list)
    nonlinearity: Nonlinearity = Nonlinearity.TANH
    # training
    lr: float = Field(default=1e-2, ge=0)
    epochs: int = Field(default=20000, ge=0)
    # convergence studies
    eval_points: int = Field(default=100, ge=1)
    convergence_seeds: list[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], min_length=1)
    filter_seed: int = 0
    spectral_count: int = Field(default=16, ge=1)
    # execution
    workers: int = Field(default=1, ge=1)
    output_dir: Path = Path("results")

    @field_validator("n_list")
    @classmethod
    def _check_sizes(cls, value: list[int]) -> list[int]:
        small = [n for n in value if n < MIN_SPHERE_POINTS]
        if small:
            raise ValueError(f"sphere runs need n >= {MIN_SPHERE_POINTS}, got {small}")
        return value

    @field_validator("tau_list")
    @classmethod
    def _check_noise(cls, value: list[float]) -> list[float]:
        if any(tau < 0 for tau in value):
            raise ValueError("noise levels must be >= 0")
        return value

    @field_validator("widths")
    @classmethod
    def _check_widths(cls, value: list[int]) -> list[int]:
        if any(width < 1 for width in value):
            raise ValueError("hidden widths must be >= 1")
        return value

    @model_validator(mode="after")
    def _check_consistency(self) -> Self:
        if self.layers != len(self.widths) + 1:
            raise ValueError(
                f"layers={self.layers} needs {self.layers - 1} hidden widths, "
                f"got {len(self.widths)}"
            )
        if self.eval_points > min(self.n_list):
            raise ValueError(
                f"eval_points={self.eval_points} exceeds the smallest n {min(self.n_list)}"
            )
        return self

    def model_widths(self, features: int) -> tuple[int, ...]:
        """Widths of a network mapping ``features`` inputs to ``features`` outputs."""
        return (features, *self.widths, features)


def load_config(path: str | Path, **overrides: Any) -> ExperimentConfig:
    """Read an :class:`ExperimentConfig` from TOML.

    Raises:
        ConfigurationError: Unreadable file, bad TOML, or invalid values.
    """
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
        return ExperimentConfig.model_validate({**data, **overrides})
    except ValidationError as e:
        raise ConfigurationError(e, context={"path": str(path)}) from e
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise ConfigurationError(e, context={"path": str(path)}) from e
