"""Custom exceptions"""

from typing import Optional


class OtaError(Exception):
    """Base exception for the conversion toolkit"""

    pass


class ConfigError(OtaError):
    """Configuration error"""

    pass


class DomainError(OtaError):
    """Argument outside the domain of a mathematical operation"""

    pass


class OutOfBoundsError(OtaError):
    """Instance price outside the price bounds"""

    def __init__(self, index: int, value: float) -> None:
        self.index = index
        self.value = value
        super().__init__(f"Price {value!r} at index {index} is outside the price bounds")


class EmptyInstanceError(OtaError):
    """Instance without prices"""

    pass


class NonPositiveProfitError(OtaError):
    """Profit ratio requested for a non-positive profit"""

    def __init__(self, profit: float) -> None:
        self.profit = profit
        super().__init__(f"Algorithm profit must be positive, got {profit!r}")


class PredictionOutOfBoundsError(OtaError):
    """Prediction outside the price bounds"""

    def __init__(self, prediction: float) -> None:
        self.prediction = prediction
        super().__init__(f"Prediction {prediction!r} is outside the price bounds")


class NoRootError(OtaError):
    """Breakpoint equations have no root in the bracketing interval"""

    pass


class OrderingViolationError(OtaError):
    """Solved breakpoints are not monotone"""

    pass


class BadPartitionError(OtaError):
    """Price or utilization partition is malformed"""

    pass


class BadRewardError(OtaError):
    """Learner reward outside [0, 1]"""

    def __init__(self, arm: int, reward: float) -> None:
        self.arm = arm
        self.reward = reward
        super().__init__(f"Reward {reward!r} for arm {arm} is outside [0, 1]")


class DataError(OtaError):
    """Price data error"""

    pass


class ParseError(DataError):
    """Unparseable row in a price file"""

    def __init__(self, line: int, message: Optional[str] = None) -> None:
        self.line = line
        super().__init__(f"Line {line}: {message or 'cannot parse row'}")


class UnsortedDataError(DataError):
    """Timestamps are not sorted"""

    pass


class NonPositivePriceError(DataError):
    """Non-positive price in a price file"""

    def __init__(self, line: int, price: float) -> None:
        self.line = line
        self.price = price
        super().__init__(f"Line {line}: price must be positive, got {price!r}")


class WindowTooLongError(DataError):
    """Window longer than the price series"""

    pass


class TooFewWindowsError(DataError):
    """Not enough windows to build previous-window predictions"""

    pass
