"""Plot-ready CSV tables"""

from pathlib import Path
from typing import Optional, Sequence, Union

import pandas as pd

from ota_cli.analysis.frontier import FrontierPoint
from ota_cli.core.models import ExecutionTrace
from ota_cli.harness.backtest import BacktestReport, SweepReport
from ota_cli.thresholds.piecewise import PiecewiseThreshold

Target = Optional[Union[str, Path]]


def curve_frame(x: Sequence[float], y: Sequence[float]) -> pd.DataFrame:
    return pd.DataFrame({"x": list(x), "y": list(y)})


def frontier_frame(points: Sequence[FrontierPoint]) -> pd.DataFrame:
    frame = pd.DataFrame([p.model_dump() for p in points])
    return frame.rename(columns={"lam": "lambda"})


def threshold_frame(phi: PiecewiseThreshold, points: int = 201) -> pd.DataFrame:
    w, values = phi.sample(points)
    return pd.DataFrame({"w": w, "phi": values})


def trace_frame(trace: ExecutionTrace) -> pd.DataFrame:
    return pd.DataFrame(trace.to_rows())


def boxplot_frame(report: BacktestReport) -> pd.DataFrame:
    return pd.DataFrame(report.to_boxplot_rows())


def sweep_frame(report: SweepReport) -> pd.DataFrame:
    """Boxplot rows keyed by error level, crash probability and algorithm"""
    return pd.DataFrame(report.to_boxplot_rows())


def write_csv(frame: pd.DataFrame, target: Target = None) -> Optional[str]:
    """Write to ``target``, or return the CSV text when no target is given"""
    if target is None:
        return frame.to_csv(index=False)
    frame.to_csv(target, index=False)
    return None
