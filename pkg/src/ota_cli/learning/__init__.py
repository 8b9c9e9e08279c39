"""Robustness-parameter selection"""

from ota_cli.learning.forecaster import (
    LearnerState,
    RegretSummary,
    alf_select,
    alf_update,
    regret,
)
from ota_cli.learning.selection import (
    DEFAULT_GRID_SIZE,
    cumulative_average,
    lambda_best_static,
    lambda_grid,
    lambda_offline_best,
    lambda_worst_case,
    normalized_reward,
    profits_over_grid,
)

__all__ = [
    "DEFAULT_GRID_SIZE",
    "LearnerState",
    "RegretSummary",
    "alf_select",
    "alf_update",
    "cumulative_average",
    "lambda_best_static",
    "lambda_grid",
    "lambda_offline_best",
    "lambda_worst_case",
    "normalized_reward",
    "profits_over_grid",
    "regret",
]
