"""Result records for spectral checks and experiment runs."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from abstract_validation_base import ProcessEntry, ProcessLog, ValidationResult

from tangent_bundle_nn.models.enums import ModelTag

NON_AMPLIFYING_TOL = 1e-12


@dataclass(frozen=True)
class ResponseAnalysis:
    """Grid evaluation of a frequency response.

    ``max_abs`` is ``max |h(lambda)|`` over the grid and ``lipschitz`` the
    largest finite-difference slope magnitude.
    """

    max_abs: float
    lipschitz: float
    lambda_max: float
    validation: ValidationResult | None = None

    @property
    def non_amplifying(self) -> bool:
        return self.max_abs <= 1.0 + NON_AMPLIFYING_TOL

    @property
    def is_valid(self) -> bool:
        if self.validation is not None:
            return bool(self.validation.is_valid)
        return self.non_amplifying


@dataclass(frozen=True)
class BandlimitReport:
    """Outcome of a bandlimitedness check."""

    is_bandlimited: bool
    residual_fraction: float
    lambda_m: float

    def __bool__(self) -> bool:
        return self.is_bandlimited


@dataclass
class ResultRow:
    """One trained-and-evaluated denoising trial."""

    experiment_id: str
    n: int
    tau: float
    seed_sample: int
    seed_noise: int
    model: ModelTag
    eval_mse: float | None
    train_mse_final: float | None
    wallclock_s: float
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    @property
    def sort_key(self) -> tuple[int, float, int, int, str]:
        return (self.n, self.tau, self.seed_sample, self.seed_noise, self.model.value)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["model"] = self.model.value
        return data


@dataclass(frozen=True)
class SummaryRow:
    """Mean and standard deviation of eval MSE over the successful trials of a cell."""

    n: int
    tau: float
    model: ModelTag
    mean: float | None
    std: float | None
    trials: int
    failures: int

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["model"] = self.model.value
        return data


@dataclass(frozen=True)
class ConvergenceRow:
    """Discrepancy of the ambient lift at ``n`` against the largest-``n`` run."""

    n: int
    seed: int
    discrepancy: float | None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class SpectralRow:
    """Leading eigenvalues at one ``n`` and seed with cluster diagnostics."""

    n: int
    seed: int
    eigenvalues: tuple[float, ...]
    first_cluster_spread: float | None
    cluster_ratio: float | None
    error: str | None = None

    @property
    def ratios(self) -> tuple[float, ...]:
        """``lambda_i / lambda_1`` using the first nonzero eigenvalue as reference."""
        positive = [v for v in self.eigenvalues if v > 0.0]
        if not positive:
            return ()
        return tuple(v / positive[0] for v in self.eigenvalues)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "n": self.n,
            "seed": self.seed,
            "first_cluster_spread": self.first_cluster_spread,
            "cluster_ratio": self.cluster_ratio,
            "error": self.error,
        }
        for i, (value, ratio) in enumerate(
            zip(self.eigenvalues, self.ratios or (None,) * len(self.eigenvalues), strict=True)
        ):
            data[f"lambda_{i + 1}"] = value
            data[f"ratio_{i + 1}"] = ratio
        return data


@dataclass
class ExperimentReport[RowT]:
    """Rows of an experiment plus a process log of failed trials."""

    rows: list[RowT] = field(default_factory=list)
    process_log: ProcessLog = field(default_factory=ProcessLog)

    def add_trial_error(
        self,
        field: str,
        message: str,
        value: Any = None,
        context: dict[str, Any] | None = None,
    ) -> None:
        """Record a failed trial.

        Args:
            field: Trial identifier.
            message: Error message.
            value: Offending value, if any.
            context: Extra context (error kind, seeds).
        """
        entry = ProcessEntry(
            entry_type="error",
            field=field,
            message=message,
            original_value=str(value) if value is not None else None,
            context=context or {},
        )
        self.process_log.errors.append(entry)

    @property
    def failures(self) -> int:
        return len(self.process_log.errors)
