"""Verify Command"""

import sys
from typing import Optional

import rich_click as click

from ota_cli.commands.options import format_option, resolve_seed, seed_option
from ota_cli.formatters import get_formatter
from ota_cli.harness.verify import run_verification


@click.command()
@click.option(
    "--theta",
    "thetas",
    type=click.FloatRange(min=1.0, min_open=True),
    multiple=True,
    help="Fluctuation ratio to check; repeatable (default: 5)",
)
@seed_option
@click.option("--quick", is_flag=True, help="Skip the adversarial certificates")
@format_option("table", "json")
@click.pass_context
def verify(
    ctx: click.Context,
    thetas: tuple[float, ...],
    seed: Optional[int],
    quick: bool,
    output_format: str,
) -> None:
    """Run the invariant suite; exits 1 when any check fails

    Examples:
        ota verify --theta 5
        ota verify --theta 2 --theta 5 --quick --format json
    """
    results = run_verification(thetas or (5.0,), seed=resolve_seed(ctx, seed), quick=quick)
    click.echo(get_formatter(output_format).format_checks(results))
    if not all(r.passed for r in results):
        sys.exit(1)
