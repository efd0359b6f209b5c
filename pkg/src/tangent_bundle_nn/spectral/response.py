"""Frequency response analysis on a grid of eigenvalues."""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from tangent_bundle_nn.core.errors import SpectralError
from tangent_bundle_nn.models.results import ResponseAnalysis
from tangent_bundle_nn.protocols import FrequencyResponseProtocol
from tangent_bundle_nn.validation.validators import create_response_validators

DEFAULT_GRID_POINTS = 2049


def response_grid(lambda_max: float, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Uniform grid on ``[0, lambda_max]``."""
    if lambda_max < 0 or points < 2:
        raise SpectralError.build(
            "invalid_grid", "Need lambda_max >= 0 and >= 2 points, got ({lambda_max}, {points})",
            lambda_max=lambda_max, points=points,
        )
    return np.linspace(0.0, lambda_max, points)


def analyze_response(
    response: FrequencyResponseProtocol,
    lambda_grid: np.ndarray,
    lipschitz_constant: float | None = None,
) -> ResponseAnalysis:
    """Max ``|h|`` and max finite-difference slope of ``response`` over ``lambda_grid``.

    The result carries the outcome of the non-amplifying check (and of the
    Lipschitz check when ``lipschitz_constant`` is given).

    Example:
        >>> from tangent_bundle_nn.models.spectral import FirFrequencyResponse
        >>> analysis = analyze_response(FirFrequencyResponse(taps=(2.0, 0.0)),
        ...                             response_grid(10.0))
        >>> analysis.max_abs, analysis.non_amplifying
        (2.0, False)
    """
    grid = np.sort(np.asarray(lambda_grid, dtype=np.float64).ravel())
    if grid.size < 2:
        raise SpectralError.build("invalid_grid", "The grid needs at least two points")
    values = np.asarray(response(grid), dtype=np.float64)
    steps = np.diff(grid)
    distinct = steps > 0
    slopes = np.abs(np.diff(values)[distinct] / steps[distinct])

    analysis = ResponseAnalysis(
        max_abs=float(np.max(np.abs(values))),
        lipschitz=float(slopes.max()) if slopes.size else 0.0,
        lambda_max=float(grid[-1]),
    )
    validation = create_response_validators(lipschitz_constant).validate(analysis)
    return replace(analysis, validation=validation)
