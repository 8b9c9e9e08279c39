"""Piecewise sufficient condition for α-competitiveness of a threshold

The price range is split into M_0 = L <= M_1 <= ... <= M_I = U and the
utilization range into 0 = β_0 <= ... <= β_I = 1. Each piece falls in one
of three cases by comparing M_i with φ(0) and φ(1):

- I: M_i <= φ(0), needs M_i <= α_i L and β_i = 0
- II: φ(0) < M_i <= φ(1), a flat run at M_{i-1} followed by an increasing
  part with φ(w) <= α_i [∫_0^w φ + (1 - w) L] and φ(β_i⁻) = M_i
- III: M_i > φ(1), needs M_i <= α_i ∫_0^1 φ and β_i = 1
"""

import logging
from typing import Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ota_cli.core.models import PriceBounds, ProblemKind
from ota_cli.thresholds.breakpoints import boundary_breakpoints, intermediate_breakpoints
from ota_cli.thresholds.designs import reservation_price
from ota_cli.thresholds.piecewise import PiecewiseThreshold
from ota_cli.thresholds.tradeoff import tradeoff_max_search, tradeoff_one_way
from ota_cli.utils.exceptions import BadPartitionError

logger = logging.getLogger(__name__)

GRID_POINTS = 1000
INEQUALITY_SLACK = 1e-9
BOUNDARY_TOLERANCE = 1e-6

Case = Literal["I", "II", "III", "empty", "point"]


class PieceVerdict(BaseModel):
    """Outcome of the check on one price piece [M_{i-1}, M_i)"""

    model_config = ConfigDict(frozen=True)

    index: int
    case: Case
    passed: bool
    detail: str = ""
    location: Optional[float] = None


class SufficientConditionReport(BaseModel):
    """Per-piece verdicts plus the terminal-value condition φ(1) ∈ {M_i}"""

    model_config = ConfigDict(frozen=True)

    verdicts: tuple[PieceVerdict, ...]
    terminal_ok: bool

    @property
    def passed(self) -> bool:
        return self.terminal_ok and all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> list[PieceVerdict]:
        return [v for v in self.verdicts if not v.passed]


class Partition(BaseModel):
    """Price partition, utilization partition and per-piece ratios"""

    model_config = ConfigDict(frozen=True)

    prices: tuple[float, ...]
    utilizations: tuple[float, ...]
    alphas: tuple[float, ...]


def _check_partition(
    prices: Sequence[float],
    utilizations: Sequence[float],
    alphas: Sequence[float],
    bounds: PriceBounds,
) -> None:
    tol = 1e-12 * bounds.upper
    pieces = len(alphas)
    if pieces < 1 or len(prices) != pieces + 1 or len(utilizations) != pieces + 1:
        raise BadPartitionError(
            f"need I ratios with I+1 prices and utilizations, got "
            f"{len(alphas)}, {len(prices)}, {len(utilizations)}"
        )
    if abs(prices[0] - bounds.lower) > tol or abs(prices[-1] - bounds.upper) > tol:
        raise BadPartitionError("price partition must run from L to U")
    if utilizations[0] != 0.0 or utilizations[-1] != 1.0:
        raise BadPartitionError("utilization partition must run from 0 to 1")
    if any(b < a - tol for a, b in zip(prices, prices[1:])):
        raise BadPartitionError("price partition must be non-decreasing")
    if any(b < a for a, b in zip(utilizations, utilizations[1:])):
        raise BadPartitionError("utilization partition must be non-decreasing")
    if any(a <= 0.0 for a in alphas):
        raise BadPartitionError("competitive ratios must be positive")


def _check_case_two(
    phi: PiecewiseThreshold,
    index: int,
    floor_price: float,
    ceiling_price: float,
    start: float,
    end: float,
    alpha: float,
) -> PieceVerdict:
    lower, upper = phi.bounds.lower, phi.bounds.upper
    slack = INEQUALITY_SLACK * upper
    flat_end = min(max(phi.pseudo_inverse(phi.bounds.clamp(floor_price)), start), end)

    if flat_end >= end:
        # the increasing part is absorbed; only the flat run at M_{i-1} remains
        budget = alpha * (phi.integral(0.0, flat_end) + (1.0 - flat_end) * lower)
        if floor_price > budget + slack:
            return PieceVerdict(
                index=index,
                case="II",
                passed=False,
                detail=f"flat level {floor_price:.6g} exceeds {budget:.6g}",
                location=flat_end,
            )
        return PieceVerdict(index=index, case="II", passed=True)

    w = np.linspace(flat_end, end, GRID_POINTS, endpoint=False)
    values = phi(w)
    budgets = alpha * (phi.integrate(0.0, w) + (1.0 - w) * lower)
    gaps = values - budgets
    worst = int(np.argmax(gaps))
    if gaps[worst] > slack:
        return PieceVerdict(
            index=index,
            case="II",
            passed=False,
            detail=f"φ(w) exceeds α[∫φ + (1-w)L] by {gaps[worst]:.3g}",
            location=float(w[worst]),
        )
    reached = phi.left_limit(end)
    if abs(reached - ceiling_price) > BOUNDARY_TOLERANCE * upper:
        return PieceVerdict(
            index=index,
            case="II",
            passed=False,
            detail=f"φ reaches {reached:.6g} at the piece end instead of {ceiling_price:.6g}",
            location=end,
        )
    return PieceVerdict(index=index, case="II", passed=True)


def check_sufficient_condition(
    phi: PiecewiseThreshold,
    price_partition: Sequence[float],
    util_partition: Sequence[float],
    alphas: Sequence[float],
    bounds: PriceBounds,
) -> SufficientConditionReport:
    """Check a threshold piece by piece against the three-case condition

    Raises:
        BadPartitionError: partitions of the wrong length, order or range
    """
    _check_partition(price_partition, util_partition, alphas, bounds)
    tol = INEQUALITY_SLACK * bounds.upper
    at_zero = phi.value(0.0)
    at_one = phi.left_limit(1.0)
    total = phi.integral(0.0, 1.0)
    pieces = len(alphas)

    verdicts = []
    for i in range(1, pieces + 1):
        low, high = price_partition[i - 1], price_partition[i]
        start, end = util_partition[i - 1], util_partition[i]
        alpha = alphas[i - 1]

        if high - low <= tol:
            if i < pieces:
                verdicts.append(PieceVerdict(index=i, case="empty", passed=True))
                continue
            # the closed last piece [U] is a single peak price
            reach = phi.pseudo_inverse(bounds.clamp(high))
            budget = alpha * (phi.integral(0.0, reach) + (1.0 - reach) * bounds.lower)
            ok = high <= budget + tol
            verdicts.append(
                PieceVerdict(
                    index=i,
                    case="point",
                    passed=ok,
                    detail="" if ok else f"peak {high:.6g} exceeds {budget:.6g}",
                    location=reach,
                )
            )
            continue

        if high <= at_zero + tol:
            ok = high <= alpha * bounds.lower + tol and end == 0.0
            detail = "" if ok else f"needs M_i <= α_i L = {alpha * bounds.lower:.6g} and β_i = 0"
            verdicts.append(PieceVerdict(index=i, case="I", passed=ok, detail=detail))
        elif high > at_one + tol:
            ok = high <= alpha * total + tol and end == 1.0
            detail = "" if ok else f"needs M_i <= α_i ∫φ = {alpha * total:.6g} and β_i = 1"
            verdicts.append(PieceVerdict(index=i, case="III", passed=ok, detail=detail))
        else:
            verdicts.append(_check_case_two(phi, i, low, high, start, end, alpha))

    terminal_ok = any(
        abs(at_one - m) <= BOUNDARY_TOLERANCE * bounds.upper for m in price_partition[1:]
    )
    report = SufficientConditionReport(verdicts=tuple(verdicts), terminal_ok=terminal_ok)
    logger.debug("sufficient condition: %s", [(v.index, v.case, v.passed) for v in verdicts])
    return report


def design_partition(
    bounds: PriceBounds, kind: ProblemKind, lam: float, prediction: float
) -> Partition:
    """Partition used to argue the guarantees of the learning-augmented design"""
    lower, upper = bounds.lower, bounds.upper
    if kind is ProblemKind.INTEGRAL:
        params = tradeoff_max_search(lam, bounds.theta)
        eta, gamma = params.eta, params.gamma
        if prediction < lower * eta:
            return Partition(
                prices=(lower, lower * eta, upper),
                utilizations=(0.0, 0.0, 1.0),
                alphas=(eta, gamma),
            )
        if prediction < lower * gamma:
            level = reservation_price(bounds, lam, prediction)
            return Partition(
                prices=(lower, level, prediction, upper),
                utilizations=(0.0, 0.0, 1.0, 1.0),
                alphas=(gamma, eta, gamma),
            )
        return Partition(
            prices=(lower, lower * gamma, upper), utilizations=(0.0, 0.0, 1.0), alphas=(gamma, eta)
        )

    params = tradeoff_one_way(lam, bounds.theta)
    eta, gamma = params.eta, params.gamma
    if lower == upper:
        return Partition(prices=(lower, upper), utilizations=(0.0, 1.0), alphas=(1.0,))
    boundary = boundary_breakpoints(bounds, eta, gamma)
    if prediction < boundary.m:
        return Partition(
            prices=(lower, boundary.m, upper),
            utilizations=(0.0, boundary.beta, 1.0),
            alphas=(eta, gamma),
        )
    points = intermediate_breakpoints(bounds, eta, gamma, prediction)
    if prediction == upper:
        return Partition(
            prices=(lower, upper, upper), utilizations=(0.0, points.beta1, 1.0), alphas=(gamma, eta)
        )
    return Partition(
        prices=(lower, points.m1, prediction, upper),
        utilizations=(0.0, points.beta1, points.beta2, 1.0),
        alphas=(gamma, eta, gamma),
    )
