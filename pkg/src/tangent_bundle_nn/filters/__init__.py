"""Shift operators and FIR filters on sheaf signals."""

from tangent_bundle_nn.filters.fir import FirFilter, apply_fir, load_filter, save_filter
from tangent_bundle_nn.filters.shift import (
    EigShiftBuilder,
    ScalingSquaringShiftBuilder,
    ShiftBuilderFactory,
    ShiftOperator,
    shift_from_laplacian,
    shift_operator,
)

__all__ = [
    "EigShiftBuilder",
    "FirFilter",
    "ScalingSquaringShiftBuilder",
    "ShiftBuilderFactory",
    "ShiftOperator",
    "apply_fir",
    "load_filter",
    "save_filter",
    "shift_from_laplacian",
    "shift_operator",
]
