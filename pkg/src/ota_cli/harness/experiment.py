"""Windowing, prediction generation, error adjustment and crash injection"""

from typing import Optional, Sequence, Union

import numpy as np

from ota_cli.core.models import Instance, PriceBounds
from ota_cli.harness.data import PriceSeries
from ota_cli.utils.exceptions import DomainError, TooFewWindowsError, WindowTooLongError

Seed = Union[int, Sequence[int]]


def window_count(ticks: int, window_len: int, stride: int) -> int:
    """floor((T - W)/S) + 1 full windows"""
    if window_len > ticks:
        return 0
    return (ticks - window_len) // stride + 1


def make_windows(series: PriceSeries, window_len: int, stride: int) -> list[Instance]:
    """Sliding windows at offsets 0, S, 2S, ...; a trailing partial window is dropped

    Raises:
        WindowTooLongError: the window is longer than the series
    """
    if window_len < 2 or stride < 1:
        raise DomainError(f"need window_len >= 2 and stride >= 1, got {window_len}, {stride}")
    if window_len > series.length:
        raise WindowTooLongError(
            f"window of {window_len} ticks is longer than the series ({series.length} ticks)"
        )
    count = window_count(series.length, window_len, stride)
    return [
        Instance(prices=series.prices[k * stride : k * stride + window_len]) for k in range(count)
    ]


def predict_prev_max(windows: Sequence[Instance], bounds: PriceBounds) -> list[Optional[float]]:
    """Previous window's peak as the prediction, clamped to the bounds

    The first window has no prediction (``None``) and is not evaluated.

    Raises:
        TooFewWindowsError: fewer than two windows
    """
    if len(windows) < 2:
        raise TooFewWindowsError(f"need at least 2 windows, got {len(windows)}")
    predictions: list[Optional[float]] = [None]
    predictions += [bounds.clamp(previous.peak) for previous in windows[:-1]]
    return predictions


def adjust_error(prediction: float, peak: float, level: float, bounds: PriceBounds) -> float:
    """Shrink the prediction error by ``level``: V + (P - V)·level, clamped"""
    if not 0.0 <= level <= 1.0:
        raise DomainError(f"error level must lie in [0, 1], got {level!r}")
    if level == 0.0:
        return bounds.clamp(peak)
    return bounds.clamp(peak + (prediction - peak) * level)


def inject_crash(inst: Instance, q: float, seed: Seed, bounds: PriceBounds) -> Instance:
    """With probability q replace the last price by L"""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"crash probability must lie in [0, 1], got {q!r}")
    rng = np.random.default_rng(seed)
    if rng.random() < q:
        return Instance(prices=inst.prices[:-1] + (bounds.lower,))
    return inst
