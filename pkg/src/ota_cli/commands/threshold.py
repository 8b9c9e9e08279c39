"""Threshold Command"""

import sys
from pathlib import Path
from typing import Optional

import rich_click as click

from ota_cli.commands.options import (
    bounds_options,
    format_option,
    kind_option,
    lambda_option,
    resolve_bounds,
)
from ota_cli.core.models import ProblemKind
from ota_cli.formatters import get_formatter
from ota_cli.formatters.csv import threshold_frame, write_csv
from ota_cli.thresholds.designs import build_threshold_max_search, build_threshold_one_way
from ota_cli.utils.exceptions import OtaError


@click.command()
@kind_option
@bounds_options
@lambda_option
@click.option("--prediction", type=float, required=True, help="Predicted peak price P")
@click.option(
    "--points", type=click.IntRange(min=2), default=201, show_default=True, help="CSV samples"
)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write output here")
@format_option("json", "csv", "table")
def threshold(
    kind: ProblemKind,
    theta: Optional[float],
    price_bounds: Optional[tuple[float, float]],
    lam: float,
    prediction: float,
    points: int,
    out: Optional[Path],
    output_format: str,
) -> None:
    """Build the threshold φ for one (λ, P) pair

    JSON is the segment description; CSV samples w,phi on [0, 1].

    Examples:
        ota threshold --kind one-way --bounds 2 10 --lambda 0.5 --prediction 6
        ota threshold --prediction 4 --format csv --out phi.csv
    """
    bounds = resolve_bounds(theta, price_bounds)
    if not bounds.contains(prediction):
        raise click.BadParameter(
            f"{prediction} is outside [{bounds.lower}, {bounds.upper}]", param_hint="--prediction"
        )

    try:
        if kind is ProblemKind.INTEGRAL:
            phi = build_threshold_max_search(bounds, lam, prediction)
        else:
            phi = build_threshold_one_way(bounds, lam, prediction)
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    if output_format == "csv":
        text = write_csv(threshold_frame(phi, points), out)
        if text is not None:
            click.echo(text, nl=False)
        return
    output = get_formatter(output_format).format_threshold(phi)
    if out is not None:
        out.write_text(output)
    else:
        click.echo(output)
