"""Threshold functions and trade-off parameters"""

from ota_cli.thresholds.breakpoints import (
    BoundaryBreakpoints,
    IntermediateBreakpoints,
    boundary_breakpoints,
    intermediate_breakpoints,
)
from ota_cli.thresholds.designs import (
    NaiveMode,
    build_threshold_max_search,
    build_threshold_one_way,
    naive_reservation_price,
    pure_reservation_max_search,
    pure_threshold_one_way,
    reservation_price,
)
from ota_cli.thresholds.piecewise import (
    ExpShape,
    FlatShape,
    PiecewiseThreshold,
    ThresholdSegment,
    threshold_eval,
    threshold_integral,
    threshold_pseudo_inverse,
)
from ota_cli.thresholds.special import alpha_star, lambert_w
from ota_cli.thresholds.tradeoff import (
    TradeoffParams,
    one_way_consistency,
    tradeoff,
    tradeoff_max_search,
    tradeoff_one_way,
)

__all__ = [
    "BoundaryBreakpoints",
    "ExpShape",
    "FlatShape",
    "IntermediateBreakpoints",
    "NaiveMode",
    "PiecewiseThreshold",
    "ThresholdSegment",
    "TradeoffParams",
    "alpha_star",
    "boundary_breakpoints",
    "build_threshold_max_search",
    "build_threshold_one_way",
    "intermediate_breakpoints",
    "lambert_w",
    "naive_reservation_price",
    "one_way_consistency",
    "pure_reservation_max_search",
    "pure_threshold_one_way",
    "reservation_price",
    "threshold_eval",
    "threshold_integral",
    "threshold_pseudo_inverse",
    "tradeoff",
    "tradeoff_max_search",
    "tradeoff_one_way",
]
