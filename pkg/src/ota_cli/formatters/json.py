"""JSON Formatter"""

import json
from typing import Any

from ota_cli.analysis.certify import CertificateReport
from ota_cli.analysis.frontier import FrontierPoint
from ota_cli.formatters.base import Formatter
from ota_cli.harness.backtest import BacktestReport, SweepReport
from ota_cli.harness.verify import CheckResult
from ota_cli.thresholds.piecewise import PiecewiseThreshold


def dumps(data: Any) -> str:
    """Stable JSON: declaration field order, shortest round-trip floats"""
    return json.dumps(data, indent=2, ensure_ascii=False)


class JsonFormatter(Formatter):
    """JSON formatter"""

    def format_certificate(self, report: CertificateReport, with_records: bool = False) -> str:
        exclude = None if with_records else {"records"}
        return dumps(report.model_dump(mode="json", exclude=exclude))

    def format_frontier(self, points: list[FrontierPoint]) -> str:
        return dumps([point.model_dump(mode="json") for point in points])

    def format_threshold(self, phi: PiecewiseThreshold) -> str:
        return dumps(phi.model_dump(mode="json"))

    def format_backtest(self, report: BacktestReport) -> str:
        return dumps(report.model_dump(mode="json"))

    def format_sweep(self, report: SweepReport) -> str:
        return dumps(report.model_dump(mode="json"))

    def format_checks(self, results: list[CheckResult]) -> str:
        return dumps(
            {
                "passed": all(r.passed for r in results),
                "checks": [r.model_dump(mode="json") for r in results],
            }
        )
