"""Conversion policies"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from ota_cli.core.models import PriceBounds, ProblemKind
from ota_cli.thresholds.designs import (
    NaiveMode,
    build_threshold_one_way,
    naive_reservation_price,
    pure_reservation_max_search,
    pure_threshold_one_way,
    reservation_price,
)
from ota_cli.thresholds.piecewise import PiecewiseThreshold


class Policy(BaseModel):
    """Reservation price (1-max-search) or threshold function (one-way trading)"""

    model_config = ConfigDict(frozen=True)

    kind: ProblemKind
    bounds: PriceBounds
    reservation: Optional[float] = None
    threshold: Optional[PiecewiseThreshold] = None

    @model_validator(mode="after")
    def _check_kind(self) -> "Policy":
        if self.kind is ProblemKind.INTEGRAL:
            if self.reservation is None:
                raise ValueError("max-search policy needs a reservation price")
            if not self.bounds.contains(self.reservation):
                raise ValueError(f"reservation price {self.reservation} is outside the bounds")
        elif self.threshold is None:
            raise ValueError("one-way policy needs a threshold function")
        return self

    @property
    def as_threshold(self) -> PiecewiseThreshold:
        """Threshold view; a reservation price is a constant threshold"""
        if self.threshold is not None:
            return self.threshold
        assert self.reservation is not None
        return PiecewiseThreshold.constant(self.bounds, self.reservation)

    @classmethod
    def max_search(cls, bounds: PriceBounds, reservation: float) -> "Policy":
        return cls(kind=ProblemKind.INTEGRAL, bounds=bounds, reservation=reservation)

    @classmethod
    def one_way(cls, threshold: PiecewiseThreshold) -> "Policy":
        return cls(kind=ProblemKind.FRACTIONAL, bounds=threshold.bounds, threshold=threshold)


def make_policy(bounds: PriceBounds, kind: ProblemKind, lam: float, prediction: float) -> Policy:
    """Learning-augmented policy for robustness parameter λ and prediction P"""
    if kind is ProblemKind.INTEGRAL:
        return Policy.max_search(bounds, reservation_price(bounds, lam, prediction))
    return Policy.one_way(build_threshold_one_way(bounds, lam, prediction))


def pure_policy(bounds: PriceBounds, kind: ProblemKind) -> Policy:
    """Optimal policy that ignores predictions"""
    if kind is ProblemKind.INTEGRAL:
        return Policy.max_search(bounds, pure_reservation_max_search(bounds))
    return Policy.one_way(pure_threshold_one_way(bounds))


def naive_policy(
    bounds: PriceBounds, mode: NaiveMode, prediction: float, lam: float = 1.0
) -> Policy:
    """Warm-up 1-max-search baseline"""
    return Policy.max_search(bounds, naive_reservation_price(bounds, mode, prediction, lam))
