"""Piecewise threshold functions φ: [0, 1] -> [L, U]

A threshold is stored as an ordered list of segments tiling [0, 1]. Each
segment is either flat or a shifted exponential
``floor + base * exp(rate * (w - anchor))``. Evaluation is right-continuous.
All evaluation helpers accept floats or numpy arrays.
"""

import json
from typing import Literal, Union

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ota_cli.core.models import PriceBounds
from ota_cli.utils.exceptions import DomainError

FloatArray = npt.NDArray[np.float64]
ArrayLike = Union[float, FloatArray]

RANGE_TOLERANCE = 1e-9


class FlatShape(BaseModel):
    """Constant reservation level"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["flat"] = "flat"
    level: float

    def value(self, w: ArrayLike) -> FloatArray:
        return np.full_like(np.asarray(w, dtype=float), self.level)

    def integral(self, a: ArrayLike, b: ArrayLike) -> FloatArray:
        return self.level * (np.asarray(b, dtype=float) - np.asarray(a, dtype=float))

    def inverse(self, v: FloatArray, start: float, end: float) -> FloatArray:
        return np.where(v >= self.level, end, start)


class ExpShape(BaseModel):
    """Shifted exponential floor + base * exp(rate * (w - anchor))"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["exp"] = "exp"
    floor: float
    base: float = Field(ge=0.0)
    rate: float = Field(gt=0.0)
    anchor: float

    def value(self, w: ArrayLike) -> FloatArray:
        w = np.asarray(w, dtype=float)
        return self.floor + self.base * np.exp(self.rate * (w - self.anchor))

    def integral(self, a: ArrayLike, b: ArrayLike) -> FloatArray:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        growth = np.exp(self.rate * (a - self.anchor)) * np.expm1(self.rate * (b - a))
        return self.floor * (b - a) + self.base / self.rate * growth

    def inverse(self, v: FloatArray, start: float, end: float) -> FloatArray:
        if self.base == 0.0:
            return np.where(v >= self.floor, end, start)
        excess = np.maximum(v - self.floor, 0.0)
        with np.errstate(divide="ignore"):
            u = self.anchor + np.log(excess / self.base) / self.rate
        return np.clip(u, start, end)


Shape = Union[FlatShape, ExpShape]


class ThresholdSegment(BaseModel):
    """One piece of a threshold on [w_start, w_end)"""

    model_config = ConfigDict(frozen=True)

    w_start: float = Field(ge=0.0, le=1.0)
    w_end: float = Field(ge=0.0, le=1.0)
    shape: Shape = Field(discriminator="kind")

    @model_validator(mode="after")
    def _check_interval(self) -> "ThresholdSegment":
        if self.w_start > self.w_end:
            raise ValueError(f"segment start {self.w_start} exceeds end {self.w_end}")
        return self

    @property
    def width(self) -> float:
        return self.w_end - self.w_start

    @property
    def start_value(self) -> float:
        return float(self.shape.value(self.w_start))

    @property
    def end_value(self) -> float:
        """Left limit at w_end"""
        return float(self.shape.value(self.w_end))

    @classmethod
    def flat(cls, w_start: float, w_end: float, level: float) -> "ThresholdSegment":
        return cls(w_start=w_start, w_end=w_end, shape=FlatShape(level=level))

    @classmethod
    def exp(
        cls, w_start: float, w_end: float, floor: float, base: float, rate: float, anchor: float
    ) -> "ThresholdSegment":
        return cls(
            w_start=w_start,
            w_end=w_end,
            shape=ExpShape(floor=floor, base=base, rate=rate, anchor=anchor),
        )


class PiecewiseThreshold(BaseModel):
    """Non-decreasing right-continuous threshold tiling [0, 1]"""

    model_config = ConfigDict(frozen=True)

    segments: tuple[ThresholdSegment, ...]
    bounds: PriceBounds

    @model_validator(mode="after")
    def _check_tiling(self) -> "PiecewiseThreshold":
        if not self.segments:
            raise ValueError("threshold needs at least one segment")
        if self.segments[0].w_start != 0.0 or self.segments[-1].w_end != 1.0:
            raise ValueError("segments must tile [0, 1]")
        tol = RANGE_TOLERANCE * self.bounds.upper
        previous_end = None
        for segment in self.segments:
            if segment.width <= 0.0:
                raise ValueError("zero-width segments must be dropped")
            if previous_end is not None:
                end_w, end_value = previous_end
                if segment.w_start != end_w:
                    raise ValueError(f"segments do not abut at w={end_w}")
                if segment.start_value < end_value - tol:
                    raise ValueError(f"threshold decreases at w={end_w}")
            if segment.end_value < segment.start_value - tol:
                raise ValueError("segment values must be non-decreasing")
            for value in (segment.start_value, segment.end_value):
                if not (self.bounds.lower - tol <= value <= self.bounds.upper + tol):
                    raise ValueError(f"threshold value {value} leaves the price bounds")
            previous_end = (segment.w_end, segment.end_value)
        return self

    @classmethod
    def from_segments(
        cls, segments: list[ThresholdSegment], bounds: PriceBounds
    ) -> "PiecewiseThreshold":
        """Build a threshold, dropping absorbed (zero-width) segments"""
        kept = tuple(s for s in segments if s.w_end > s.w_start)
        return cls(segments=kept, bounds=bounds)

    @classmethod
    def constant(cls, bounds: PriceBounds, level: float) -> "PiecewiseThreshold":
        """Constant reservation price on [0, 1]"""
        return cls(segments=(ThresholdSegment.flat(0.0, 1.0, level),), bounds=bounds)

    @property
    def starts(self) -> FloatArray:
        return np.array([s.w_start for s in self.segments])

    @property
    def is_constant(self) -> bool:
        return len(self.segments) == 1 and isinstance(self.segments[0].shape, FlatShape)

    def __call__(self, w: ArrayLike) -> FloatArray:
        """Right-continuous evaluation on an array of utilizations"""
        w = np.asarray(w, dtype=float)
        index = np.searchsorted(self.starts, w, side="right") - 1
        out = np.empty_like(w)
        for i, segment in enumerate(self.segments):
            mask = index == i
            if np.any(mask):
                out[mask] = segment.shape.value(w[mask])
        return out

    def value(self, w: float) -> float:
        if not 0.0 <= w <= 1.0:
            raise DomainError(f"utilization must lie in [0, 1], got {w!r}")
        return float(self(np.array([w]))[0])

    def left_limit(self, w: float) -> float:
        """Limit of φ from the left at w in (0, 1]"""
        if not 0.0 < w <= 1.0:
            raise DomainError(f"left limit needs w in (0, 1], got {w!r}")
        index = int(np.searchsorted(self.starts, w, side="left")) - 1
        return float(self.segments[index].shape.value(w))

    def integrate(self, a: ArrayLike, b: ArrayLike) -> FloatArray:
        """Closed-form ∫_a^b φ(u) du, broadcasting over arrays"""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        total = np.zeros(np.broadcast(a, b).shape)
        for segment in self.segments:
            lo = np.clip(a, segment.w_start, segment.w_end)
            hi = np.clip(b, segment.w_start, segment.w_end)
            total = total + segment.shape.integral(lo, hi)
        return total

    def integral(self, a: float, b: float) -> float:
        if not (0.0 <= a <= b <= 1.0):
            raise DomainError(f"integration needs 0 <= a <= b <= 1, got [{a!r}, {b!r}]")
        return float(self.integrate(a, b))

    def pseudo_inverse_many(self, v: ArrayLike) -> FloatArray:
        """sup{u in [0, 1] : φ(u) <= v} for each price, maximal on flat ties"""
        v = np.asarray(v, dtype=float)
        result = np.zeros_like(v)
        for segment in self.segments:
            reached = v >= segment.start_value
            candidate = segment.shape.inverse(v, segment.w_start, segment.w_end)
            result = np.where(reached, np.maximum(result, candidate), result)
        return result

    def pseudo_inverse(self, v: float) -> float:
        if not self.bounds.lower <= v <= self.bounds.upper:
            raise DomainError(f"price {v!r} is outside the bounds")
        return float(self.pseudo_inverse_many(np.array([v]))[0])

    def sample(self, points: int = 201) -> tuple[FloatArray, FloatArray]:
        """Evenly spaced (w, φ(w)) samples for plotting"""
        w = np.linspace(0.0, 1.0, points)
        return w, self(w)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseThreshold":
        return cls.model_validate_json(text)


def threshold_eval(phi: PiecewiseThreshold, w: float) -> float:
    """Right-continuous threshold value at utilization w"""
    return phi.value(w)


def threshold_integral(phi: PiecewiseThreshold, a: float, b: float) -> float:
    """Exact integral of φ over [a, b]"""
    return phi.integral(a, b)


def threshold_pseudo_inverse(phi: PiecewiseThreshold, v: float) -> float:
    """Largest utilization whose threshold does not exceed price v"""
    return phi.pseudo_inverse(v)
