"""Options shared by several commands"""

from typing import Any, Callable, Optional, TypeVar

import rich_click as click
from pydantic import ValidationError

from ota_cli.config import OtaConfig
from ota_cli.core.models import PriceBounds, ProblemKind

F = TypeVar("F", bound=Callable[..., Any])

DEFAULT_THETA = 5.0


def kind_option(f: F) -> F:
    return click.option(
        "--kind",
        type=click.Choice([k.value for k in ProblemKind]),
        default=ProblemKind.FRACTIONAL.value,
        show_default=True,
        callback=lambda ctx, param, value: ProblemKind(value),
        help="Problem variant: max-search (integral) or one-way (fractional)",
    )(f)


def bounds_options(f: F) -> F:
    f = click.option(
        "--bounds",
        "price_bounds",
        nargs=2,
        type=float,
        default=None,
        help="Price bounds L U (overrides --theta)",
    )(f)
    return click.option(
        "--theta",
        type=click.FloatRange(min=1.0),
        default=None,
        help=f"Fluctuation ratio U/L with L = 1 (default: {DEFAULT_THETA:g})",
    )(f)


def lambda_option(f: F) -> F:
    return click.option(
        "--lambda",
        "lam",
        type=click.FloatRange(0.0, 1.0),
        default=0.5,
        show_default=True,
        help="Robustness parameter: 0 trusts the prediction, 1 ignores it",
    )(f)


def seed_option(f: F) -> F:
    return click.option(
        "--seed", type=click.IntRange(min=0), default=None, help="Seed (default: OTA_SEED or 0)"
    )(f)


def format_option(*choices: str, default: Optional[str] = None) -> Callable[[F], F]:
    return click.option(
        "--format",
        "output_format",
        type=click.Choice(list(choices)),
        default=default or choices[0],
        show_default=True,
        help="Output format",
    )


def resolve_bounds(
    theta: Optional[float], price_bounds: Optional[tuple[float, float]]
) -> PriceBounds:
    """PriceBounds from ``--bounds`` or ``--theta``

    Raises:
        click.UsageError: both given, or the bounds are invalid
    """
    if theta is not None and price_bounds:
        raise click.UsageError("Use either --theta or --bounds, not both")
    try:
        if price_bounds:
            lower, upper = price_bounds
            return PriceBounds(lower=lower, upper=upper)
        return PriceBounds.from_theta(DEFAULT_THETA if theta is None else theta)
    except ValidationError as e:
        message = "; ".join(error["msg"] for error in e.errors())
        raise click.BadParameter(message, param_hint="--bounds") from e


def resolve_seed(ctx: click.Context, seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    config = (ctx.obj or {}).get("config") or OtaConfig()
    return config.seed
