"""Concrete threshold designs: pure online, naive baselines and learning-augmented"""

import logging
import math
from enum import Enum

from ota_cli.core.models import PriceBounds
from ota_cli.thresholds.breakpoints import boundary_breakpoints, intermediate_breakpoints
from ota_cli.thresholds.piecewise import PiecewiseThreshold, ThresholdSegment
from ota_cli.thresholds.special import alpha_star
from ota_cli.thresholds.tradeoff import tradeoff_max_search, tradeoff_one_way
from ota_cli.utils.exceptions import DomainError, PredictionOutOfBoundsError

logger = logging.getLogger(__name__)


class NaiveMode(str, Enum):
    """Warm-up baselines that use the prediction without a guarantee"""

    BLIND = "blind"
    LINEAR_BLEND = "linear-blend"


def _check_prediction(bounds: PriceBounds, prediction: float) -> None:
    if not bounds.contains(prediction):
        raise PredictionOutOfBoundsError(prediction)


def _check_lambda(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam!r}")


def pure_reservation_max_search(bounds: PriceBounds) -> float:
    """√(LU), the optimal reservation price without predictions"""
    if bounds.lower == bounds.upper:
        return bounds.lower
    return math.sqrt(bounds.lower * bounds.upper)


def pure_threshold_one_way(bounds: PriceBounds) -> PiecewiseThreshold:
    """φ(w) = L + (α* - 1)L exp(α* w), the optimal threshold without predictions"""
    a_star = alpha_star(bounds.theta)
    lower = bounds.lower
    segment = ThresholdSegment.exp(
        0.0, 1.0, floor=lower, base=(a_star - 1.0) * lower, rate=a_star, anchor=0.0
    )
    return PiecewiseThreshold(segments=(segment,), bounds=bounds)


def reservation_price(bounds: PriceBounds, lam: float, prediction: float) -> float:
    """Learning-augmented reservation price for 1-max-search

    Lη below [Lη, Lγ), Lγ above it, and the blend λLγ + (1-λ)P/η in between.
    """
    _check_prediction(bounds, prediction)
    params = tradeoff_max_search(lam, bounds.theta)
    lower = bounds.lower
    low, high = lower * params.eta, lower * params.gamma
    if prediction < low:
        return low
    if prediction >= high:
        return high
    return lam * high + (1.0 - lam) * prediction / params.eta


def naive_reservation_price(
    bounds: PriceBounds, mode: NaiveMode, prediction: float, lam: float = 1.0
) -> float:
    """Baselines: trust the prediction blindly, or blend it linearly with √(LU)"""
    _check_prediction(bounds, prediction)
    if mode is NaiveMode.BLIND:
        return prediction
    _check_lambda(lam)
    return lam * pure_reservation_max_search(bounds) + (1.0 - lam) * prediction


def build_threshold_max_search(
    bounds: PriceBounds, lam: float, prediction: float
) -> PiecewiseThreshold:
    """Constant threshold at the learning-augmented reservation price"""
    return PiecewiseThreshold.constant(bounds, reservation_price(bounds, lam, prediction))


def build_threshold_one_way(
    bounds: PriceBounds, lam: float, prediction: float
) -> PiecewiseThreshold:
    """Learning-augmented one-way threshold for robustness parameter λ and prediction P

    Below the handover price M the threshold is an η-rate exponential up to
    β followed by a γ-rate exponential reaching U. From M upwards it climbs
    at rate γ to a flat level M1, rises again at rate η to P and finishes
    with the γ-rate tail. Pieces of zero width are dropped.
    """
    _check_prediction(bounds, prediction)
    lower, upper = bounds.lower, bounds.upper
    if lower == upper:
        return PiecewiseThreshold.constant(bounds, lower)

    params = tradeoff_one_way(lam, bounds.theta)
    eta, gamma = params.eta, params.gamma
    boundary = boundary_breakpoints(bounds, eta, gamma)

    if prediction < boundary.m:
        segments = [
            ThresholdSegment.exp(
                0.0,
                boundary.beta,
                floor=lower,
                base=max(eta - 1.0, 0.0) * lower,
                rate=eta,
                anchor=0.0,
            ),
            ThresholdSegment.exp(
                boundary.beta, 1.0, floor=lower, base=upper - lower, rate=gamma, anchor=1.0
            ),
        ]
    else:
        points = intermediate_breakpoints(bounds, eta, gamma, prediction)
        segments = [
            ThresholdSegment.exp(
                0.0, points.beta1, floor=lower, base=(gamma - 1.0) * lower, rate=gamma, anchor=0.0
            ),
            ThresholdSegment.flat(points.beta1, points.beta1p, points.m1),
            ThresholdSegment.exp(
                points.beta1p,
                points.beta2,
                floor=lower,
                base=points.m1 - lower,
                rate=eta,
                anchor=points.beta1p,
            ),
            ThresholdSegment.exp(
                points.beta2, 1.0, floor=lower, base=upper - lower, rate=gamma, anchor=1.0
            ),
        ]
    threshold = PiecewiseThreshold.from_segments(segments, bounds)
    logger.debug(
        "one-way threshold lambda=%s P=%s has %d segments", lam, prediction, len(threshold.segments)
    )
    return threshold
