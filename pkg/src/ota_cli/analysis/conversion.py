"""Conversion functions g(p) and the integral constraint on them"""

import math
from typing import Iterable, Sequence

import numpy as np
from scipy.integrate import trapezoid

from ota_cli.analysis.instances import PolicyFactory, p_instance
from ota_cli.core.models import PriceBounds, ProblemKind
from ota_cli.engine.runner import run_instance
from ota_cli.utils.exceptions import DomainError

INTEGRAL_SLACK = 0.01


def conversion_function(
    factory: PolicyFactory,
    prediction: float,
    bounds: PriceBounds,
    p_grid: Iterable[float],
    steps: int = 2000,
) -> list[tuple[float, float]]:
    """Amount converted before the compulsory step on the p-instance of each peak"""
    policy = factory(prediction)
    if policy.kind is not ProblemKind.FRACTIONAL:
        raise DomainError("conversion functions are defined for one-way trading")
    samples = []
    for p in sorted(float(p) for p in p_grid):
        trace = run_instance(policy, p_instance(bounds, p, steps))
        samples.append((p, trace.final_utilization))
    return samples


def conversion_lower_bound(p: float, gamma: float, bounds: PriceBounds) -> float:
    """(1/γ) ln((p - L)/(γL - L)), the least conversion a γ-robust algorithm needs at peak p"""
    lower = bounds.lower
    if gamma <= 1.0 or p <= gamma * lower:
        return 0.0
    return math.log((p - lower) / (gamma * lower - lower)) / gamma


def check_consistency_integral_constraint(
    g_samples: Sequence[tuple[float, float]], gamma: float, eta: float, bounds: PriceBounds
) -> bool:
    """∫_{γL}^{U} g(u) du <= (η - 1)U/η, trapezoid rule with 1% slack"""
    start, upper = gamma * bounds.lower, bounds.upper
    limit = (eta - 1.0) * upper / eta
    if start >= upper:
        return limit >= 0.0
    samples = sorted(g_samples)
    ps = np.array([p for p, _ in samples])
    gs = np.array([g for _, g in samples])
    inside = (ps > start) & (ps < upper)
    # g at U itself is a jump to 1; the integral uses the left limit
    tail = gs[ps < upper][-1] if np.any(ps < upper) else gs[0]
    xs = np.concatenate(([start], ps[inside], [upper]))
    ys = np.concatenate(([np.interp(start, ps, gs)], gs[inside], [tail]))
    area = float(trapezoid(ys, xs))
    return area <= limit * (1.0 + INTEGRAL_SLACK) + 1e-12
