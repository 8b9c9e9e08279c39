"""Synth Command"""

import sys
from pathlib import Path
from typing import Optional

import rich_click as click

from ota_cli.commands.options import resolve_seed, seed_option
from ota_cli.core.models import PriceBounds
from ota_cli.harness.data import synthesize_prices, write_prices
from ota_cli.utils.exceptions import OtaError


@click.command()
@click.option("--ticks", type=click.IntRange(min=1), required=True, help="Number of prices")
@click.option("--drift", type=float, default=0.0, show_default=True, help="Mean log-return")
@click.option(
    "--vol",
    type=click.FloatRange(min=0.0),
    default=0.01,
    show_default=True,
    help="Log-return standard deviation",
)
@click.option(
    "--start", type=click.FloatRange(min=0.0, min_open=True), default=100.0, show_default=True
)
@click.option("--bounds", "price_bounds", nargs=2, type=float, default=None, help="Clip to L U")
@seed_option
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write CSV here")
@click.pass_context
def synth(
    ctx: click.Context,
    ticks: int,
    drift: float,
    vol: float,
    start: float,
    price_bounds: Optional[tuple[float, float]],
    seed: Optional[int],
    out: Optional[Path],
) -> None:
    """Generate a seeded geometric random walk as timestamp,price CSV

    Examples:
        ota synth --ticks 10000 --vol 0.002 --seed 7 --out prices.csv
        ota synth --ticks 500 --vol 0 > flat.csv
    """
    bounds = None
    if price_bounds:
        lower, upper = price_bounds
        if not 0 < lower <= upper:
            raise click.BadParameter("need 0 < L <= U", param_hint="--bounds")
        bounds = PriceBounds(lower=lower, upper=upper)

    try:
        series = synthesize_prices(
            ticks, drift=drift, vol=vol, seed=resolve_seed(ctx, seed), start=start, bounds=bounds
        )
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)

    text = write_prices(series, out)
    if text is not None:
        click.echo(text, nl=False)
