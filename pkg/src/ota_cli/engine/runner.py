"""Run threshold policies over price sequences"""

import math

import numpy as np

from ota_cli.core.accounting import validate_instance
from ota_cli.core.models import ExecutionTrace, Instance, ProblemKind
from ota_cli.engine.policy import Policy
from ota_cli.utils.exceptions import DomainError

REPLAY_STEP = 1e-3
REPLAY_SLACK = 1e-9


def ota_step(policy: Policy, w: float, v: float) -> float:
    """Fraction converted at price v with current utilization w

    max-search converts everything at the first price reaching the
    reservation; one-way trading converts up to the pseudo-inverse of φ.
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"utilization must lie in [0, 1], got {w!r}")
    if not policy.bounds.contains(v):
        raise DomainError(f"price {v!r} is outside the bounds")
    if policy.kind is ProblemKind.INTEGRAL:
        assert policy.reservation is not None
        return 1.0 - w if (w == 0.0 and v >= policy.reservation) else 0.0
    return max(0.0, policy.as_threshold.pseudo_inverse(v) - w)


def run_instance(policy: Policy, inst: Instance) -> ExecutionTrace:
    """Run a policy over every price but the last, then convert the rest at v_N"""
    validate_instance(inst, policy.bounds)
    prices = np.asarray(inst.prices, dtype=float)
    online = prices[:-1]

    if policy.kind is ProblemKind.INTEGRAL:
        assert policy.reservation is not None
        levels = np.maximum.accumulate((online >= policy.reservation).astype(float))
    else:
        targets = policy.as_threshold.pseudo_inverse_many(online)
        levels = np.maximum.accumulate(targets)

    path = np.concatenate(([0.0], levels))
    allocations = np.diff(path)
    compulsory = 1.0 - path[-1]
    allocations = np.append(allocations, compulsory)
    path = np.append(path, 1.0)

    return ExecutionTrace(
        kind=policy.kind,
        prices=inst.prices,
        allocations=tuple(allocations.tolist()),
        utilization_path=tuple(path.tolist()),
        profit=math.fsum((prices * allocations).tolist()),
        compulsory_amount=float(compulsory),
    )


def replay_allocation_optimality(policy: Policy, inst: Instance, trace: ExecutionTrace) -> bool:
    """Check every online allocation against a grid search of v·x - ∫_w^{w+x} φ"""
    phi = policy.as_threshold
    for n, (v, x) in enumerate(zip(inst.prices[:-1], trace.allocations[:-1])):
        w = trace.utilization_path[n]
        room = max(0.0, 1.0 - w)
        if x < 0.0 or x > room + 1e-12:
            return False
        grid = np.append(np.arange(0.0, room, REPLAY_STEP), room)
        best = float(np.max(v * grid - phi.integrate(w, w + grid)))
        chosen = v * x - float(phi.integrate(w, min(w + x, 1.0)))
        if chosen < best - REPLAY_SLACK:
            return False
    return True
