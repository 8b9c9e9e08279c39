"""Backtests of the four λ-selection strategies over sliding windows"""

import logging
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ota_cli.core.accounting import validate_instance
from ota_cli.core.models import PriceBounds, ProblemKind
from ota_cli.harness.data import PriceSeries, derive_bounds, load_prices
from ota_cli.harness.experiment import adjust_error, inject_crash, make_windows, predict_prev_max
from ota_cli.learning.forecaster import LearnerState, alf_select, alf_update, regret
from ota_cli.learning.selection import (
    cumulative_average,
    lambda_best_static,
    lambda_grid,
    normalized_reward,
    profits_over_grid,
)
from ota_cli.utils.exceptions import ConfigError, OutOfBoundsError

logger = logging.getLogger(__name__)


class Algorithm(str, Enum):
    """λ-selection strategies"""

    WORST_CASE = "worst_case"
    OFFLINE_BEST = "offline_best"
    ALF = "alf"
    BEST_STATIC = "best_static"


class BacktestConfig(BaseModel):
    """Experiment settings; ``bounds=None`` derives them from the data"""

    model_config = ConfigDict(frozen=True)

    data_path: Optional[Path] = None
    window_len: int = Field(ge=2)
    stride: int = Field(ge=1)
    bounds: Optional[PriceBounds] = None
    error_level: float = Field(default=1.0, ge=0.0, le=1.0)
    crash_prob: float = Field(default=0.0, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)
    kind: ProblemKind = ProblemKind.FRACTIONAL
    algorithms: tuple[Algorithm, ...] = tuple(Algorithm)
    lambda_grid_size: int = Field(default=33, ge=2)


class BoxplotSummary(BaseModel):
    """Five-number summary with 1.5·IQR whiskers"""

    model_config = ConfigDict(frozen=True)

    minimum: float
    lower_whisker: float
    q1: float
    median: float
    q3: float
    upper_whisker: float
    maximum: float
    mean: float

    @classmethod
    def from_values(cls, values: np.ndarray) -> "BoxplotSummary":
        q1, median, q3 = np.quantile(values, [0.25, 0.5, 0.75])
        spread = 1.5 * (q3 - q1)
        low = values[values >= q1 - spread]
        high = values[values <= q3 + spread]
        return cls(
            minimum=float(values.min()),
            lower_whisker=float(min(low.min(), q1)),
            q1=float(q1),
            median=float(median),
            q3=float(q3),
            upper_whisker=float(max(high.max(), q3)),
            maximum=float(values.max()),
            mean=float(values.mean()),
        )


class BacktestReport(BaseModel):
    """Per-window profit ratios, their summaries and the learning curves"""

    model_config = ConfigDict(frozen=True)

    config: BacktestConfig
    bounds: PriceBounds
    windows_evaluated: int
    predictions: tuple[float, ...]
    peaks: tuple[float, ...]
    ratios: dict[str, tuple[float, ...]]
    summaries: dict[str, BoxplotSummary]
    cumulative_profit: dict[str, tuple[float, ...]]
    regret: tuple[float, ...] = ()
    regret_rate: tuple[float, ...] = ()
    expected_regret: tuple[float, ...] = ()
    alf_lambdas: tuple[float, ...] = ()
    offline_best_lambdas: tuple[float, ...] = ()
    best_static_lambda: Optional[float] = None

    def to_boxplot_rows(self) -> list[dict[str, Any]]:
        """One row per algorithm for boxplot CSVs"""
        return [
            {"algorithm": name, **summary.model_dump()} for name, summary in self.summaries.items()
        ]


def run_backtest(config: BacktestConfig, series: Optional[PriceSeries] = None) -> BacktestReport:
    """Evaluate every window after the first with each selected algorithm

    Windows are processed in time order; the learner sees the rewards of
    every λ on a window only after choosing its λ for that window.

    Raises:
        ConfigError: no data, or prices outside user-fixed bounds
    """
    if series is None:
        if config.data_path is None:
            raise ConfigError("backtest needs a price file or a price series")
        series = load_prices(config.data_path)
    bounds = config.bounds or derive_bounds(series)

    windows = make_windows(series, config.window_len, config.stride)
    previous_peaks = predict_prev_max(windows, bounds)
    grid = lambda_grid(config.lambda_grid_size)
    worst_arm = len(grid) - 1

    learner = LearnerState.uniform(config.lambda_grid_size, seed=config.seed)
    predictions, peaks, rows, alf_arms, rewards = [], [], [], [], []
    mixtures: list[list[float]] = []
    for index in range(1, len(windows)):
        window = inject_crash(windows[index], config.crash_prob, [config.seed, index], bounds)
        try:
            validate_instance(window, bounds)
        except OutOfBoundsError as e:
            raise ConfigError(f"window {index}: {e}") from e
        previous = previous_peaks[index]
        assert previous is not None
        peak = window.peak
        prediction = adjust_error(previous, peak, config.error_level, bounds)
        profits = profits_over_grid(window, prediction, bounds, config.kind, grid)

        mixtures.append(learner.probabilities.tolist())
        _, learner = alf_select(learner)
        assert learner.pending is not None
        alf_arms.append(learner.pending)
        round_rewards = [normalized_reward(p, bounds) for p in profits.tolist()]
        learner = alf_update(learner, round_rewards)

        predictions.append(prediction)
        peaks.append(peak)
        rows.append(profits)
        rewards.append(round_rewards)
        logger.debug("window %d: P=%.6g V=%.6g", index, prediction, peak)

    matrix = np.vstack(rows)
    peak_column = np.asarray(peaks)
    static_arm, static_lambda = lambda_best_static(matrix, grid)
    offline_arms = np.argmax(matrix, axis=1)

    chosen_profits = {
        Algorithm.WORST_CASE: matrix[:, worst_arm],
        Algorithm.OFFLINE_BEST: matrix[np.arange(len(rows)), offline_arms],
        Algorithm.ALF: matrix[np.arange(len(rows)), np.asarray(alf_arms)],
        Algorithm.BEST_STATIC: matrix[:, static_arm],
    }

    ratios, summaries, curves = {}, {}, {}
    for algorithm in config.algorithms:
        profit = chosen_profits[algorithm]
        ratio = peak_column / profit
        ratios[algorithm.value] = tuple(ratio.tolist())
        summaries[algorithm.value] = BoxplotSummary.from_values(ratio)
        normalized = [normalized_reward(p, bounds) for p in profit.tolist()]
        curves[algorithm.value] = tuple(cumulative_average(normalized).tolist())

    learning_regret = regret(rewards, alf_arms, mixtures)
    logger.info(
        "backtest over %d windows: best static lambda %.4g, alf regret %.4g",
        len(rows),
        static_lambda,
        learning_regret.total,
    )
    return BacktestReport(
        config=config,
        bounds=bounds,
        windows_evaluated=len(rows),
        predictions=tuple(predictions),
        peaks=tuple(peaks),
        ratios=ratios,
        summaries=summaries,
        cumulative_profit=curves,
        regret=learning_regret.cumulative,
        regret_rate=learning_regret.rate,
        expected_regret=learning_regret.expected,
        alf_lambdas=tuple(float(grid[arm]) for arm in alf_arms),
        offline_best_lambdas=tuple(float(grid[arm]) for arm in offline_arms.tolist()),
        best_static_lambda=static_lambda,
    )


class SweepReport(BaseModel):
    """Backtests over every (error level, crash probability) pair"""

    model_config = ConfigDict(frozen=True)

    error_levels: tuple[float, ...]
    crash_probs: tuple[float, ...]
    cells: tuple[BacktestReport, ...]

    def to_boxplot_rows(self) -> list[dict[str, Any]]:
        """One row per (error level, crash probability, algorithm)"""
        return [
            {
                "error_level": cell.config.error_level,
                "crash_prob": cell.config.crash_prob,
                **row,
            }
            for cell in self.cells
            for row in cell.to_boxplot_rows()
        ]


def run_sweep(
    config: BacktestConfig,
    error_levels: Sequence[float],
    crash_probs: Sequence[float],
    series: Optional[PriceSeries] = None,
) -> SweepReport:
    """Run one backtest per grid cell on a single load of the data

    Every cell shares the bounds of the base config (or the ones derived
    from the data) and its seed, so cells differ only in the two swept
    settings.

    Raises:
        ConfigError: empty grid, no data, or prices outside the bounds
        ValidationError: a level or probability outside [0, 1]
    """
    if not error_levels or not crash_probs:
        raise ConfigError("sweep needs at least one error level and one crash probability")
    if series is None:
        if config.data_path is None:
            raise ConfigError("backtest needs a price file or a price series")
        series = load_prices(config.data_path)
    bounds = config.bounds or derive_bounds(series)

    cells = []
    for level in error_levels:
        for crash in crash_probs:
            cell = BacktestConfig.model_validate(
                {**config.model_dump(), "bounds": bounds, "error_level": level, "crash_prob": crash}
            )
            logger.info("sweep cell error_level=%s crash_prob=%s", level, crash)
            cells.append(run_backtest(cell, series))
    return SweepReport(
        error_levels=tuple(float(level) for level in error_levels),
        crash_probs=tuple(float(crash) for crash in crash_probs),
        cells=tuple(cells),
    )
