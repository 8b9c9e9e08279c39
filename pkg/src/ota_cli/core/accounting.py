"""Instance validation and profit accounting"""

from ota_cli.core.models import Instance, PriceBounds
from ota_cli.utils.exceptions import EmptyInstanceError, NonPositiveProfitError, OutOfBoundsError


def validate_instance(inst: Instance, bounds: PriceBounds) -> Instance:
    """Check an instance against price bounds

    Args:
        inst: Price sequence
        bounds: Market bounds

    Returns:
        The same instance

    Raises:
        EmptyInstanceError: No prices
        OutOfBoundsError: A price lies outside [L, U]
    """
    if not inst.prices:
        raise EmptyInstanceError("Instance must contain at least one price")
    for index, value in enumerate(inst.prices):
        if not (bounds.lower <= value <= bounds.upper):
            raise OutOfBoundsError(index, value)
    return inst


def offline_opt(inst: Instance) -> float:
    """Return of the offline optimum: convert everything at the peak"""
    if not inst.prices:
        raise EmptyInstanceError("Instance must contain at least one price")
    return inst.peak


def profit_ratio(opt: float, alg: float) -> float:
    """Empirical profit ratio OPT/ALG

    Raises:
        NonPositiveProfitError: alg <= 0
    """
    if alg <= 0:
        raise NonPositiveProfitError(alg)
    return opt / alg
