"""Shared domain types and accounting"""

from ota_cli.core.accounting import offline_opt, profit_ratio, validate_instance
from ota_cli.core.models import ExecutionTrace, Instance, PriceBounds, ProblemKind

__all__ = [
    "ExecutionTrace",
    "Instance",
    "PriceBounds",
    "ProblemKind",
    "offline_opt",
    "profit_ratio",
    "validate_instance",
]
