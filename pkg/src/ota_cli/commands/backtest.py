"""Backtest Command"""

import sys
from pathlib import Path
from typing import Optional

import pandas as pd
import rich_click as click
from pydantic import ValidationError

from ota_cli.commands.options import format_option, kind_option, resolve_seed, seed_option
from ota_cli.core.models import PriceBounds, ProblemKind
from ota_cli.formatters import get_formatter
from ota_cli.formatters.csv import boxplot_frame, sweep_frame, write_csv
from ota_cli.formatters.json import JsonFormatter
from ota_cli.harness.backtest import Algorithm, BacktestConfig, run_backtest, run_sweep
from ota_cli.utils.exceptions import OtaError


@click.command()
@click.option(
    "--data",
    "data_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="timestamp,price CSV",
)
@click.option("--window-len", type=int, required=True, help="Ticks per window")
@click.option("--stride", type=int, default=None, help="Ticks between windows (default: window)")
@click.option("--bounds", "price_bounds", nargs=2, type=float, default=None, help="Fix L U")
@click.option(
    "--error-level",
    "error_levels",
    type=float,
    multiple=True,
    help="Prediction error level in [0, 1]; repeat to sweep (default: 1)",
)
@click.option(
    "--crash-prob",
    "crash_probs",
    type=float,
    multiple=True,
    help="Crash probability in [0, 1]; repeat to sweep (default: 0)",
)
@kind_option
@click.option(
    "--algorithm",
    "algorithms",
    type=click.Choice([a.value for a in Algorithm]),
    multiple=True,
    help="Strategy to report; repeatable (default: all)",
)
@click.option("--grid-size", type=int, default=33, show_default=True, help="Number of λ arms")
@seed_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write JSON report")
@click.option(
    "--boxplot-csv",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write five-number summaries",
)
@click.option(
    "--curves-csv",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write average cumulative normalized profit per round",
)
@format_option("json", "table")
@click.pass_context
def backtest(
    ctx: click.Context,
    data_path: Path,
    window_len: int,
    stride: Optional[int],
    price_bounds: Optional[tuple[float, float]],
    error_levels: tuple[float, ...],
    crash_probs: tuple[float, ...],
    kind: ProblemKind,
    algorithms: tuple[str, ...],
    grid_size: int,
    seed: Optional[int],
    out: Optional[Path],
    boxplot_csv: Optional[Path],
    curves_csv: Optional[Path],
    output_format: str,
) -> None:
    """Compare λ-selection strategies over sliding windows of a price series

    Each window is predicted by the previous window's peak, adjusted by
    --error-level and hit by a crash to L with probability --crash-prob.
    Repeating either option runs one backtest per (error level, crash
    probability) pair and groups the summaries by both settings.

    Examples:
        ota backtest --data prices.csv --window-len 288 --stride 288
        ota backtest --data prices.csv --window-len 288 --crash-prob 0.45 --kind max-search
        ota backtest --data prices.csv --window-len 100 --boxplot-csv box.csv --format table
        ota backtest --data prices.csv --window-len 288 --error-level 0 --error-level 1 \\
            --crash-prob 0 --crash-prob 0.45 --boxplot-csv grouped.csv
    """
    try:
        config = BacktestConfig(
            data_path=data_path,
            window_len=window_len,
            stride=stride or window_len,
            bounds=PriceBounds(lower=price_bounds[0], upper=price_bounds[1])
            if price_bounds
            else None,
            error_level=error_levels[0] if error_levels else 1.0,
            crash_prob=crash_probs[0] if crash_probs else 0.0,
            seed=resolve_seed(ctx, seed),
            kind=kind,
            algorithms=tuple(Algorithm(a) for a in algorithms) or tuple(Algorithm),
            lambda_grid_size=grid_size,
        )
    except ValidationError as e:
        raise click.UsageError(_validation_message(e)) from e

    if len(error_levels) > 1 or len(crash_probs) > 1:
        if curves_csv is not None:
            raise click.UsageError("--curves-csv is only available for a single backtest")
        _sweep(config, error_levels, crash_probs, out, boxplot_csv, output_format)
        return

    try:
        report = run_backtest(config)
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    if out is not None:
        out.write_text(JsonFormatter().format_backtest(report))
    if boxplot_csv is not None:
        write_csv(boxplot_frame(report), boxplot_csv)
    if curves_csv is not None:
        curves = pd.DataFrame(report.cumulative_profit)
        curves.insert(0, "round", range(1, len(curves) + 1))
        write_csv(curves, curves_csv)

    if out is None or output_format == "table":
        click.echo(get_formatter(output_format).format_backtest(report))


def _validation_message(error: ValidationError) -> str:
    return "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in error.errors())


def _sweep(
    config: BacktestConfig,
    error_levels: tuple[float, ...],
    crash_probs: tuple[float, ...],
    out: Optional[Path],
    boxplot_csv: Optional[Path],
    output_format: str,
) -> None:
    try:
        report = run_sweep(
            config, error_levels or (config.error_level,), crash_probs or (config.crash_prob,)
        )
    except ValidationError as e:
        raise click.UsageError(_validation_message(e)) from e
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    if out is not None:
        out.write_text(JsonFormatter().format_sweep(report))
    if boxplot_csv is not None:
        write_csv(sweep_frame(report), boxplot_csv)
    if out is None or output_format == "table":
        click.echo(get_formatter(output_format).format_sweep(report))
