"""Static and offline choices of the robustness parameter λ"""

from functools import lru_cache
from typing import Sequence

import numpy as np
import numpy.typing as npt

from ota_cli.core.models import Instance, PriceBounds, ProblemKind
from ota_cli.engine.policy import Policy, make_policy
from ota_cli.engine.runner import run_instance
from ota_cli.utils.exceptions import DomainError

DEFAULT_GRID_SIZE = 33


def lambda_grid(size: int = DEFAULT_GRID_SIZE) -> npt.NDArray[np.float64]:
    """Evenly spaced λ values on [0, 1]"""
    if size < 2:
        raise DomainError(f"lambda grid needs at least two points, got {size}")
    return np.linspace(0.0, 1.0, size)


def lambda_worst_case() -> float:
    """λ = 1: the pure online design that ignores predictions"""
    return 1.0


@lru_cache(maxsize=4096)
def cached_policy(bounds: PriceBounds, kind: ProblemKind, lam: float, prediction: float) -> Policy:
    return make_policy(bounds, kind, lam, prediction)


def profits_over_grid(
    inst: Instance,
    prediction: float,
    bounds: PriceBounds,
    kind: ProblemKind,
    grid: Sequence[float],
) -> npt.NDArray[np.float64]:
    """Profit of the λ-policy on a revealed instance for every λ in the grid"""
    return np.array(
        [
            run_instance(cached_policy(bounds, kind, float(lam), prediction), inst).profit
            for lam in grid
        ]
    )


def lambda_offline_best(
    inst: Instance,
    prediction: float,
    bounds: PriceBounds,
    kind: ProblemKind,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> float:
    """Grid λ with the highest profit on this instance, smallest λ on ties"""
    grid = lambda_grid(grid_size)
    profits = profits_over_grid(inst, prediction, bounds, kind, grid)
    return float(grid[int(np.argmax(profits))])


def lambda_best_static(
    profit_matrix: npt.NDArray[np.float64], grid: Sequence[float]
) -> tuple[int, float]:
    """Arm and λ maximizing the total profit over all rounds (rows) in hindsight"""
    totals = np.asarray(profit_matrix, dtype=float).sum(axis=0)
    arm = int(np.argmax(totals))
    return arm, float(grid[arm])


def normalized_reward(profit: float, bounds: PriceBounds) -> float:
    """(profit - L)/(U - L) clipped to [0, 1]"""
    if bounds.upper == bounds.lower:
        return 1.0
    return min(max((profit - bounds.lower) / bounds.width, 0.0), 1.0)


def cumulative_average(values: Sequence[float]) -> npt.NDArray[np.float64]:
    """Running mean of a sequence"""
    values = np.asarray(values, dtype=float)
    return np.cumsum(values) / np.arange(1, values.size + 1)
