"""Breakpoint solvers for the learning-augmented one-way threshold

The boundary system pins the utilization β where the η-rate exponential
hands over to the γ-rate exponential when the prediction is low. The
intermediate system places a flat segment at level M1 for predictions
between M and U. Both are reduced to one-dimensional bisection.
"""

import logging
import math

from pydantic import BaseModel, ConfigDict
from scipy.optimize import bisect

from ota_cli.core.models import PriceBounds
from ota_cli.utils.exceptions import (
    DomainError,
    NoRootError,
    OrderingViolationError,
    PredictionOutOfBoundsError,
)

logger = logging.getLogger(__name__)

ROOT_TOLERANCE = 1e-12
ORDER_TOLERANCE = 1e-9
MAX_BISECTIONS = 200


class BoundaryBreakpoints(BaseModel):
    """Handover price M and utilization β of the low-prediction threshold"""

    model_config = ConfigDict(frozen=True)

    m: float
    beta: float

    def residuals(self, bounds: PriceBounds, eta: float, gamma: float) -> tuple[float, float]:
        """Mismatch of both defining equations at the stored solution"""
        lower, upper = bounds.lower, bounds.upper
        first = self.m - (lower + (eta - 1.0) * lower * math.exp(eta * self.beta))
        second = (
            self.m * gamma / eta - lower - (upper - lower) * math.exp(gamma * (self.beta - 1.0))
        )
        return first, second


class IntermediateBreakpoints(BaseModel):
    """Flat level M1 and the utilizations β1 <= β1' <= β2 bounding its pieces"""

    model_config = ConfigDict(frozen=True)

    m1: float
    beta1: float
    beta1p: float
    beta2: float

    def residuals(
        self, bounds: PriceBounds, eta: float, gamma: float, prediction: float
    ) -> tuple[float, float, float, float]:
        """Mismatch of the four defining equations at the stored solution"""
        lower = bounds.lower
        head = _head_integral(self.beta1, lower, gamma)
        return (
            self.beta1 - _flat_start(self.m1, lower, gamma),
            self.m1 / eta
            - (head + (self.beta1p - self.beta1) * self.m1 + (1.0 - self.beta1p) * lower),
            lower + (self.m1 - lower) * math.exp(eta * (self.beta2 - self.beta1p)) - prediction,
            self.beta2 - _tail_start(bounds, eta, gamma, prediction),
        )


def _flat_start(m1: float, lower: float, gamma: float) -> float:
    """β1 = (1/γ) ln((max(M1/L, γ) - 1)/(γ - 1))"""
    return math.log((max(m1 / lower, gamma) - 1.0) / (gamma - 1.0)) / gamma


def _head_integral(beta1: float, lower: float, gamma: float) -> float:
    """∫_0^β1 of L + (γ-1)L exp(γu)"""
    return lower * beta1 + (gamma - 1.0) * lower * math.expm1(gamma * beta1) / gamma


def _flat_end(m1: float, beta1: float, lower: float, eta: float, gamma: float) -> float:
    """β1' from the consistency balance M1/η = ∫φ + (β1'-β1)M1 + (1-β1')L"""
    head = _head_integral(beta1, lower, gamma)
    return (m1 / eta - head + beta1 * m1 - lower) / (m1 - lower)


def _tail_start(bounds: PriceBounds, eta: float, gamma: float, prediction: float) -> float:
    """β2 = 1 + (1/γ) ln((min(Pγ/η, U) - L)/(U - L))"""
    lower, upper = bounds.lower, bounds.upper
    reach = min(prediction * gamma / eta, upper)
    return 1.0 + math.log((reach - lower) / (upper - lower)) / gamma


def check_ordering(beta1: float, beta1p: float, beta2: float) -> None:
    """Require 0 <= β1 <= β1' <= β2 <= 1 up to ORDER_TOLERANCE

    Raises:
        OrderingViolationError: the utilizations are out of order
    """
    if not (
        -ORDER_TOLERANCE <= beta1 <= beta1p + ORDER_TOLERANCE
        and beta1p <= beta2 + ORDER_TOLERANCE
        and beta2 <= 1.0 + ORDER_TOLERANCE
    ):
        raise OrderingViolationError(
            f"breakpoints out of order: beta1={beta1}, beta1'={beta1p}, beta2={beta2}"
        )


def _check_pair(bounds: PriceBounds, eta: float, gamma: float) -> None:
    tol = 1e-10 * bounds.theta
    if not (1.0 - tol <= eta <= gamma + tol and gamma <= bounds.theta + tol):
        raise DomainError(f"expected 1 <= eta <= gamma <= theta, got eta={eta}, gamma={gamma}")


def boundary_breakpoints(bounds: PriceBounds, eta: float, gamma: float) -> BoundaryBreakpoints:
    """Solve for (M, β) by bisection on β after eliminating M

    Raises:
        NoRootError: the mismatch does not change sign on [0, 1]
    """
    _check_pair(bounds, eta, gamma)
    lower, upper = bounds.lower, bounds.upper
    if upper == lower or eta == 1.0:
        return BoundaryBreakpoints(m=lower, beta=1.0)

    def handover(beta: float) -> float:
        return lower + (eta - 1.0) * lower * math.exp(eta * beta)

    def mismatch(beta: float) -> float:
        tail = (upper - lower) * math.exp(gamma * (beta - 1.0))
        return handover(beta) * gamma / eta - lower - tail

    tol = ROOT_TOLERANCE * upper
    at_zero, at_one = mismatch(0.0), mismatch(1.0)
    if abs(at_zero) <= tol:
        beta = 0.0
    elif abs(at_one) <= tol:
        beta = 1.0
    elif at_zero > 0.0 > at_one:
        beta = bisect(mismatch, 0.0, 1.0, xtol=1e-15, rtol=8.9e-16, maxiter=MAX_BISECTIONS)
    else:
        raise NoRootError(
            f"boundary equations have no root for eta={eta}, gamma={gamma} "
            f"(mismatch {at_zero:.3g} at 0, {at_one:.3g} at 1)"
        )
    logger.debug("boundary breakpoints eta=%s gamma=%s -> beta=%s", eta, gamma, beta)
    return BoundaryBreakpoints(m=handover(beta), beta=beta)


def intermediate_breakpoints(
    bounds: PriceBounds, eta: float, gamma: float, prediction: float
) -> IntermediateBreakpoints:
    """Solve for (M1, β1, β1', β2) by bisection on M1 in [ηL, P]

    β1, β1' and β2 follow from M1 in closed form; the root condition is the
    mismatch between the η-rate piece reaching P and the prediction itself.
    The bracket starts at ηL rather than M: at P = M the flat level sits at
    ηL, where the η-rate head of the low-prediction design ends.

    Raises:
        PredictionOutOfBoundsError: P outside [L, U]
        DomainError: P below the handover price M
        NoRootError: no sign change on the bracket
        OrderingViolationError: solved utilizations are not ordered
    """
    if not bounds.contains(prediction):
        raise PredictionOutOfBoundsError(prediction)
    _check_pair(bounds, eta, gamma)
    lower, upper = bounds.lower, bounds.upper
    if upper == lower:
        return IntermediateBreakpoints(m1=lower, beta1=0.0, beta1p=1.0, beta2=1.0)
    if eta == 1.0:
        return IntermediateBreakpoints(m1=prediction, beta1=0.0, beta1p=1.0, beta2=1.0)

    handover = boundary_breakpoints(bounds, eta, gamma).m
    tol = ROOT_TOLERANCE * upper
    if prediction < handover - 1e-9 * upper:
        raise DomainError(f"prediction {prediction} is below the handover price {handover}")

    if prediction == upper:
        beta1 = min(max(_flat_start(upper, lower, gamma), 0.0), 1.0)
        return IntermediateBreakpoints(m1=upper, beta1=beta1, beta1p=1.0, beta2=1.0)

    beta2 = _tail_start(bounds, eta, gamma, prediction)

    def mismatch(m1: float) -> float:
        beta1 = _flat_start(m1, lower, gamma)
        beta1p = _flat_end(m1, beta1, lower, eta, gamma)
        return lower + (m1 - lower) * math.exp(eta * (beta2 - beta1p)) - prediction

    lo, hi = min(eta * lower, prediction), prediction
    at_lo, at_hi = mismatch(lo), mismatch(hi)
    if abs(at_lo) <= tol:
        m1 = lo
    elif abs(at_hi) <= tol:
        m1 = hi
    elif at_lo < 0.0 < at_hi:
        m1 = bisect(mismatch, lo, hi, xtol=1e-14 * upper, rtol=8.9e-16, maxiter=MAX_BISECTIONS)
    else:
        raise NoRootError(
            f"intermediate equations have no root for P={prediction} "
            f"(mismatch {at_lo:.3g} at {lo}, {at_hi:.3g} at {hi})"
        )

    beta1 = _flat_start(m1, lower, gamma)
    beta1p = _flat_end(m1, beta1, lower, eta, gamma)
    check_ordering(beta1, beta1p, beta2)
    beta1 = min(max(beta1, 0.0), 1.0)
    beta2 = min(max(beta2, beta1), 1.0)
    beta1p = min(max(beta1p, beta1), beta2)
    logger.debug(
        "intermediate breakpoints P=%s -> M1=%s beta1=%s beta1'=%s beta2=%s",
        prediction,
        m1,
        beta1,
        beta1p,
        beta2,
    )
    return IntermediateBreakpoints(m1=m1, beta1=beta1, beta1p=beta1p, beta2=beta2)
