"""Formatter Base Class"""

from abc import ABC, abstractmethod

from ota_cli.analysis.certify import CertificateReport
from ota_cli.analysis.frontier import FrontierPoint
from ota_cli.harness.backtest import BacktestReport, SweepReport
from ota_cli.harness.verify import CheckResult
from ota_cli.thresholds.piecewise import PiecewiseThreshold


class Formatter(ABC):
    """Abstract base class for report formatters"""

    @abstractmethod
    def format_certificate(self, report: CertificateReport, with_records: bool = False) -> str:
        """Format a certification report

        Args:
            report: CertificateReport from ``certify``
            with_records: Include every (prediction, peak) record

        Returns:
            Formatted string
        """

    @abstractmethod
    def format_frontier(self, points: list[FrontierPoint]) -> str:
        """Format trade-off curve samples"""

    @abstractmethod
    def format_threshold(self, phi: PiecewiseThreshold) -> str:
        """Format a piecewise threshold"""

    @abstractmethod
    def format_backtest(self, report: BacktestReport) -> str:
        """Format a backtest report"""

    @abstractmethod
    def format_sweep(self, report: SweepReport) -> str:
        """Format backtests grouped by error level and crash probability"""

    @abstractmethod
    def format_checks(self, results: list[CheckResult]) -> str:
        """Format verification results"""
