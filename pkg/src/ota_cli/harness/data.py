"""Price series ingestion and synthesis"""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, model_validator

from ota_cli.core.models import PriceBounds
from ota_cli.utils.exceptions import (
    DataError,
    NonPositivePriceError,
    ParseError,
    UnsortedDataError,
)

logger = logging.getLogger(__name__)

TICK_SECONDS = 300
HEADER = ("timestamp", "price")


class PriceSeries(BaseModel):
    """Timestamped prices in time order (timestamps in epoch seconds)"""

    model_config = ConfigDict(frozen=True)

    timestamps: tuple[float, ...]
    prices: tuple[float, ...]

    @model_validator(mode="after")
    def _check_lengths(self) -> "PriceSeries":
        if len(self.timestamps) != len(self.prices):
            raise ValueError("one timestamp per price is required")
        return self

    @property
    def length(self) -> int:
        return len(self.prices)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"timestamp": self.timestamps, "price": self.prices})


def _parse_timestamps(column: pd.Series) -> pd.Series:
    """Integer epoch seconds, falling back to ISO-8601 strings"""
    epoch = pd.to_numeric(column, errors="coerce")
    missing = epoch.isna()
    if missing.any():
        parsed = pd.to_datetime(column[missing], utc=True, errors="coerce", format="ISO8601")
        seconds = (parsed - pd.Timestamp(0, tz="UTC")) / pd.Timedelta(seconds=1)
        epoch = epoch.astype(float)
        epoch[missing] = seconds
    return epoch.astype(float)


def load_prices(path: Union[str, Path]) -> PriceSeries:
    """Read a two-column ``timestamp,price`` CSV

    The header row is required; its names are not checked. Line numbers in
    errors count the header as line 1.

    Raises:
        ParseError: unreadable file, wrong column count, or unparseable cell
        UnsortedDataError: timestamps decrease
        NonPositivePriceError: price <= 0
    """
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except FileNotFoundError as e:
        raise DataError(f"Price file not found: {path}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(1, str(e)) from e

    if frame.shape[1] != 2:
        raise ParseError(1, f"expected 2 columns, found {frame.shape[1]}")

    timestamps = _parse_timestamps(frame.iloc[:, 0])
    prices = pd.to_numeric(frame.iloc[:, 1], errors="coerce")

    for position, (stamp, price) in enumerate(zip(timestamps, prices)):
        line = position + 2
        if pd.isna(stamp):
            raise ParseError(line, f"cannot parse timestamp {frame.iloc[position, 0]!r}")
        if pd.isna(price):
            raise ParseError(line, f"cannot parse price {frame.iloc[position, 1]!r}")
        if price <= 0:
            raise NonPositivePriceError(line, float(price))

    steps = np.diff(timestamps.to_numpy())
    if np.any(steps < 0):
        line = int(np.argmax(steps < 0)) + 3
        raise UnsortedDataError(f"Line {line}: timestamps are not in increasing order")

    logger.info("loaded %d prices from %s", len(prices), path)
    return PriceSeries(
        timestamps=tuple(timestamps.tolist()), prices=tuple(prices.astype(float).tolist())
    )


def write_prices(series: PriceSeries, path: Optional[Union[str, Path]] = None) -> Optional[str]:
    """Write a series as ``timestamp,price`` CSV; without a path the text is returned"""
    frame = series.to_frame()
    frame["timestamp"] = frame["timestamp"].astype("int64")
    return frame.to_csv(path, index=False, columns=list(HEADER))


def derive_bounds(series: PriceSeries) -> PriceBounds:
    """L = 0.95·min and U = 1.05·max of the observed prices"""
    if not series.prices:
        raise DataError("cannot derive bounds from an empty series")
    return PriceBounds(lower=0.95 * min(series.prices), upper=1.05 * max(series.prices))


def synthesize_prices(
    ticks: int,
    drift: float = 0.0,
    vol: float = 0.01,
    seed: int = 0,
    start: float = 100.0,
    bounds: Optional[PriceBounds] = None,
) -> PriceSeries:
    """Seeded geometric random walk, clipped to the bounds at every step

    Timestamps are epoch seconds spaced five minutes apart.
    """
    if ticks < 1:
        raise DataError(f"need at least one tick, got {ticks}")
    if start <= 0:
        raise DataError(f"start price must be positive, got {start}")
    rng = np.random.default_rng(seed)
    shocks = rng.normal(drift, vol, size=ticks - 1)
    prices = np.empty(ticks)
    prices[0] = bounds.clamp(start) if bounds else start
    for n, shock in enumerate(shocks, start=1):
        price = prices[n - 1] * np.exp(shock)
        prices[n] = bounds.clamp(float(price)) if bounds else price
    timestamps = np.arange(ticks, dtype=float) * TICK_SECONDS
    return PriceSeries(timestamps=tuple(timestamps.tolist()), prices=tuple(prices.tolist()))
