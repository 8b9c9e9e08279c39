"""Certify Command"""

import math
import sys
from functools import partial
from pathlib import Path
from typing import Optional

import rich_click as click

from ota_cli.analysis.certify import certify as run_certify
from ota_cli.analysis.certify import worst_trace
from ota_cli.analysis.instances import PolicyFactory
from ota_cli.commands.options import (
    bounds_options,
    format_option,
    kind_option,
    lambda_option,
    resolve_bounds,
)
from ota_cli.core.models import PriceBounds, ProblemKind
from ota_cli.engine.policy import make_policy, naive_policy, pure_policy
from ota_cli.formatters import get_formatter
from ota_cli.formatters.csv import curve_frame, trace_frame, write_csv
from ota_cli.formatters.json import JsonFormatter
from ota_cli.thresholds.designs import NaiveMode
from ota_cli.thresholds.tradeoff import tradeoff
from ota_cli.utils.exceptions import OtaError

POLICIES = ("design", "pure", NaiveMode.BLIND.value, NaiveMode.LINEAR_BLEND.value)


def _factory(policy: str, bounds: PriceBounds, kind: ProblemKind, lam: float) -> PolicyFactory:
    if policy == "design":
        return partial(make_policy, bounds, kind, lam)
    if policy == "pure":
        pure = pure_policy(bounds, kind)
        return lambda prediction: pure
    mode = NaiveMode(policy)
    return lambda prediction: naive_policy(bounds, mode, prediction, lam)


@click.command()
@kind_option
@bounds_options
@lambda_option
@click.option(
    "--policy",
    type=click.Choice(POLICIES),
    default="design",
    show_default=True,
    help="Algorithm to certify; blind and linear-blend are max-search baselines",
)
@click.option("--prediction-grid", type=click.IntRange(min=2), default=11, show_default=True)
@click.option("--p-grid", type=click.IntRange(min=10), default=50, show_default=True)
@click.option(
    "--steps",
    type=click.IntRange(min=100),
    default=2000,
    show_default=True,
    help="Length of the adversarial instances",
)
@click.option("--records", is_flag=True, help="Include every (P, p) record in the output")
@click.option(
    "--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the full JSON report"
)
@click.option(
    "--kappa-csv",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the κ(ξ) curve as x,y CSV",
)
@click.option(
    "--trace-out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the step-by-step trace of the worst robustness instance as CSV",
)
@format_option("table", "json")
def certify(
    kind: ProblemKind,
    theta: Optional[float],
    price_bounds: Optional[tuple[float, float]],
    lam: float,
    policy: str,
    prediction_grid: int,
    p_grid: int,
    steps: int,
    records: bool,
    out: Optional[Path],
    kappa_csv: Optional[Path],
    trace_out: Optional[Path],
    output_format: str,
) -> None:
    """Measure consistency and robustness against a grid adversary

    The design and pure policies exit 1 when a measurement exceeds its
    target by more than 0.1%.

    Examples:
        ota certify --kind one-way --theta 5 --lambda 0.5
        ota certify --kind max-search --bounds 2 10 --lambda 0.25 --format json
        ota certify --kind max-search --policy linear-blend --out blend.json
        ota certify --kind one-way --theta 5 --lambda 0.5 --trace-out worst.csv
    """
    bounds = resolve_bounds(theta, price_bounds)
    if policy in (NaiveMode.BLIND.value, NaiveMode.LINEAR_BLEND.value):
        if kind is not ProblemKind.INTEGRAL:
            raise click.UsageError(f"--policy {policy} is a max-search baseline")

    # the blend's consistency is attained just below √(LU)
    extra = (math.sqrt(bounds.lower * bounds.upper) * (1.0 - 1e-9),)

    try:
        targets = tradeoff(kind, 1.0 if policy == "pure" else lam, bounds.theta)
        factory = _factory(policy, bounds, kind, lam)
        report = run_certify(
            factory,
            bounds,
            targets,
            p_grid_size=p_grid,
            steps=steps,
            prediction_grid_size=prediction_grid,
            extra_predictions=extra,
        )
        if out is not None:
            out.write_text(JsonFormatter().format_certificate(report, with_records=True))
        if kappa_csv is not None:
            xs, ys = zip(*report.kappa_curve)
            write_csv(curve_frame(xs, ys), kappa_csv)
        if trace_out is not None:
            write_csv(trace_frame(worst_trace(factory, report, steps)), trace_out)
        click.echo(get_formatter(output_format).format_certificate(report, records))
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    if policy in ("design", "pure") and not report.within_targets():
        click.echo("Error: measured ratios exceed the design targets", err=True)
        sys.exit(1)
