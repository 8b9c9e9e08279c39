"""Pareto Command"""

import sys
from pathlib import Path
from typing import Optional

import rich_click as click

from ota_cli.analysis.frontier import pareto_frontier
from ota_cli.commands.options import DEFAULT_THETA, format_option, kind_option
from ota_cli.core.models import ProblemKind
from ota_cli.formatters import get_formatter
from ota_cli.formatters.csv import frontier_frame, write_csv
from ota_cli.utils.exceptions import OtaError


@click.command()
@kind_option
@click.option(
    "--theta", type=click.FloatRange(min=1.0), default=DEFAULT_THETA, show_default=True
)
@click.option(
    "--grid", type=click.IntRange(min=2), default=101, show_default=True, help="Number of λ values"
)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write CSV here")
@format_option("csv", "table", "json")
def pareto(
    kind: ProblemKind, theta: float, grid: int, out: Optional[Path], output_format: str
) -> None:
    """Emit the robustness-consistency curve with its lower bound

    CSV columns: lambda,gamma,eta,lower_bound, one row per λ.

    Examples:
        ota pareto --theta 5 --kind one-way --grid 100
        ota pareto --kind max-search --out frontier.csv
    """
    try:
        points = pareto_frontier(theta, kind, grid)
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    if output_format == "csv":
        text = write_csv(frontier_frame(points), out)
        if text is not None:
            click.echo(text, nl=False)
        return
    click.echo(get_formatter(output_format).format_frontier(points))
