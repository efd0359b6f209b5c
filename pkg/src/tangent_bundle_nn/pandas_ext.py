"""DataFrame views of experiment results (requires the ``pandas`` extra)."""

from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    import pandas as pd

    from tangent_bundle_nn.models.results import ExperimentReport, ResultRow, SummaryRow


def results_to_frame(rows: Iterable[ResultRow]) -> pd.DataFrame:
    """One row per trial and model, columns as in ``results.csv``."""
    import pandas as pd

    from tangent_bundle_nn.experiments.io import RESULT_COLUMNS

    return pd.DataFrame([row.to_dict() for row in rows], columns=RESULT_COLUMNS)


def summary_to_frame(summary: Iterable[SummaryRow], *, pivot: bool = False) -> pd.DataFrame:
    """Per-cell mean and std; ``pivot=True`` lays cells out as ``(model, tau) x n``.

    Example:
        >>> frame = summary_to_frame(result.summary, pivot=True)
        >>> frame.loc[("ddtnn", 0.01), 200]
        '2.000e-04 +/- 1.6e-05'
    """
    import pandas as pd

    from tangent_bundle_nn.experiments.io import SUMMARY_COLUMNS

    frame = pd.DataFrame([row.to_dict() for row in summary], columns=SUMMARY_COLUMNS)
    if not pivot:
        return frame
    frame["cell"] = [
        "failed" if pd.isna(mean) else f"{mean:.3e} +/- {std:.1e}"
        for mean, std in zip(frame["mean"], frame["std"], strict=True)
    ]
    return frame.pivot(index=["model", "tau"], columns="n", values="cell")


def process_log_to_frame(report: ExperimentReport[Any]) -> pd.DataFrame:
    """Failed-trial entries of a report, one row per entry."""
    import pandas as pd

    return pd.DataFrame([entry.model_dump() for entry in report.process_log.errors])
