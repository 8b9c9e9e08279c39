"""Data ingestion, experiments and backtests"""

from ota_cli.harness.backtest import (
    Algorithm,
    BacktestConfig,
    BacktestReport,
    BoxplotSummary,
    run_backtest,
)
from ota_cli.harness.data import (
    PriceSeries,
    derive_bounds,
    load_prices,
    synthesize_prices,
    write_prices,
)
from ota_cli.harness.experiment import (
    adjust_error,
    inject_crash,
    make_windows,
    predict_prev_max,
    window_count,
)
from ota_cli.harness.verify import CheckResult, run_verification

__all__ = [
    "Algorithm",
    "BacktestConfig",
    "BacktestReport",
    "BoxplotSummary",
    "CheckResult",
    "PriceSeries",
    "adjust_error",
    "derive_bounds",
    "inject_crash",
    "load_prices",
    "make_windows",
    "predict_prev_max",
    "run_backtest",
    "run_verification",
    "synthesize_prices",
    "window_count",
    "write_prices",
]
