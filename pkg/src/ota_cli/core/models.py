"""Market and Execution Data Models"""

import math
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

SUM_TOLERANCE = 1e-12


class ProblemKind(str, Enum):
    """Conversion problem variant"""

    INTEGRAL = "max-search"
    FRACTIONAL = "one-way"

    @property
    def label(self) -> str:
        """Human readable name"""
        return "1-max-search" if self is ProblemKind.INTEGRAL else "one-way trading"


class PriceBounds(BaseModel):
    """Known price range [L, U] of the market"""

    model_config = ConfigDict(frozen=True)

    lower: float = Field(gt=0, allow_inf_nan=False)
    upper: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_order(self) -> "PriceBounds":
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        return self

    @classmethod
    def from_theta(cls, theta: float, lower: float = 1.0) -> "PriceBounds":
        """Bounds with the given fluctuation ratio"""
        return cls(lower=lower, upper=lower * theta)

    @property
    def theta(self) -> float:
        """Fluctuation ratio U/L"""
        return self.upper / self.lower

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, price: float) -> bool:
        return self.lower <= price <= self.upper

    def clamp(self, price: float) -> float:
        return min(max(price, self.lower), self.upper)


class Instance(BaseModel):
    """Price sequence v_1..v_N revealed one price per step"""

    model_config = ConfigDict(frozen=True)

    prices: tuple[float, ...]

    @property
    def length(self) -> int:
        return len(self.prices)

    @property
    def peak(self) -> float:
        """Maximum price V"""
        return max(self.prices)


class ExecutionTrace(BaseModel):
    """Step-by-step record of running a policy over an instance

    ``utilization_path`` holds w^(0)..w^(N); ``allocations`` holds the
    fractions converted at each step, the last one being the compulsory
    conversion.
    """

    model_config = ConfigDict(frozen=True)

    kind: ProblemKind
    prices: tuple[float, ...]
    allocations: tuple[float, ...]
    utilization_path: tuple[float, ...]
    profit: float
    compulsory_amount: float

    @model_validator(mode="after")
    def _check_invariants(self) -> "ExecutionTrace":
        n = len(self.prices)
        if len(self.allocations) != n or len(self.utilization_path) != n + 1:
            raise ValueError("trace lengths do not match the instance length")
        if min(self.allocations) < 0:
            raise ValueError("allocations must be non-negative")
        if abs(math.fsum(self.allocations) - 1.0) > SUM_TOLERANCE:
            raise ValueError("allocations must sum to one after the compulsory conversion")
        if self.utilization_path[0] != 0.0 or abs(self.utilization_path[-1] - 1.0) > SUM_TOLERANCE:
            raise ValueError("utilization must start at 0 and end at 1")
        if any(b < a for a, b in zip(self.utilization_path, self.utilization_path[1:])):
            raise ValueError("utilization must be non-decreasing")
        if self.kind is ProblemKind.INTEGRAL:
            if any(x not in (0.0, 1.0) for x in self.allocations[:-1]):
                raise ValueError("integral allocations must be 0 or 1 before the last step")
        return self

    @property
    def length(self) -> int:
        return len(self.prices)

    @property
    def final_utilization(self) -> float:
        """Utilization w^(N-1) before the compulsory conversion"""
        return self.utilization_path[-2]

    def to_rows(self) -> list[dict[str, Any]]:
        """Rows for CSV export"""
        rows = []
        cumulative = 0.0
        for step, (price, amount) in enumerate(zip(self.prices, self.allocations), start=1):
            cumulative += price * amount
            rows.append(
                {
                    "step": step,
                    "price": price,
                    "allocation": amount,
                    "utilization": self.utilization_path[step],
                    "cumulative_profit": cumulative,
                }
            )
        return rows
