"""Adversarial instance families"""

from typing import Callable

import numpy as np

from ota_cli.core.accounting import offline_opt, profit_ratio
from ota_cli.core.models import Instance, PriceBounds
from ota_cli.engine.policy import Policy
from ota_cli.engine.runner import run_instance
from ota_cli.utils.exceptions import DomainError

PolicyFactory = Callable[[float], Policy]

SHAPES = ("p-instance", "constant", "spike")


def _check_peak(bounds: PriceBounds, p: float, steps: int, minimum: int) -> None:
    if not bounds.contains(p):
        raise DomainError(f"peak {p!r} is outside the bounds")
    if steps < minimum:
        raise DomainError(f"instance needs at least {minimum} steps, got {steps}")


def p_instance(bounds: PriceBounds, p: float, steps: int) -> Instance:
    """Prices rise linearly from L to p over N-1 steps, then drop to L"""
    _check_peak(bounds, p, steps, 3)
    rising = np.linspace(bounds.lower, p, steps - 1)
    return Instance(prices=tuple(rising.tolist()) + (bounds.lower,))


def constant_instance(bounds: PriceBounds, p: float, steps: int) -> Instance:
    """Every price equals p"""
    _check_peak(bounds, p, steps, 1)
    return Instance(prices=(p,) * steps)


def spike_instance(bounds: PriceBounds, p: float, steps: int) -> Instance:
    """Flat at L with a single spike to p just before the final price"""
    _check_peak(bounds, p, steps, 2)
    prices = [bounds.lower] * steps
    prices[-2] = p
    return Instance(prices=tuple(prices))


def build_instance(shape: str, bounds: PriceBounds, p: float, steps: int) -> Instance:
    """Instance of the named family with peak p

    Raises:
        DomainError: unknown shape, or p outside the bounds
    """
    builders = {"p-instance": p_instance, "constant": constant_instance, "spike": spike_instance}
    if shape not in builders:
        raise DomainError(f"unknown instance shape {shape!r}, expected one of {SHAPES}")
    return builders[shape](bounds, p, steps)


def instance_ratio(policy: Policy, inst: Instance) -> float:
    """OPT/ALG of a policy on one instance"""
    return profit_ratio(offline_opt(inst), run_instance(policy, inst).profit)


def evaluate_policy(policy: Policy, p: float, steps: int) -> tuple[float, str]:
    """Worst ratio and the shape attaining it over the three families with peak p"""
    bounds = policy.bounds
    candidates = (
        (instance_ratio(policy, p_instance(bounds, p, steps)), "p-instance"),
        (instance_ratio(policy, constant_instance(bounds, p, steps)), "constant"),
        (instance_ratio(policy, spike_instance(bounds, p, steps)), "spike"),
    )
    return max(candidates, key=lambda item: item[0])


def evaluate_pair(
    factory: PolicyFactory, bounds: PriceBounds, prediction: float, p: float, steps: int
) -> float:
    """Worst ratio for prediction P when the true peak is p"""
    policy = factory(prediction)
    if policy.bounds != bounds:
        raise DomainError("policy bounds differ from the evaluated bounds")
    return evaluate_policy(policy, p, steps)[0]
