import json

import numpy as np
import pytest

from ota_cli.analysis.certify import CertificateReport, RatioRecord
from ota_cli.analysis.frontier import pareto_frontier
from ota_cli.core.models import Instance, ProblemKind
from ota_cli.engine.policy import make_policy
from ota_cli.engine.runner import run_instance
from ota_cli.formatters import get_formatter
from ota_cli.formatters.csv import (
    boxplot_frame,
    curve_frame,
    frontier_frame,
    threshold_frame,
    trace_frame,
    write_csv,
)
from ota_cli.formatters.json import JsonFormatter
from ota_cli.formatters.table import TableFormatter
from ota_cli.harness.backtest import BacktestConfig, run_backtest
from ota_cli.harness.data import synthesize_prices
from ota_cli.harness.verify import CheckResult
from ota_cli.thresholds.designs import build_threshold_one_way
from ota_cli.thresholds.piecewise import PiecewiseThreshold
from ota_cli.thresholds.tradeoff import tradeoff


@pytest.fixture
def report():
    """Small hand-built certificate for one-way trading at θ = 5"""
    targets = tradeoff(ProblemKind.FRACTIONAL, 0.5, 5.0)
    return CertificateReport(
        measured_consistency=targets.eta,
        measured_robustness=targets.gamma * 0.999,
        kappa_curve=((0.0, targets.eta), (4.0, targets.gamma * 0.999)),
        worst_instances={"consistency": (3.0, 3.0), "robustness": (5.0, 1.0)},
        targets=targets,
        records=(
            RatioRecord(prediction=3.0, peak=3.0, ratio=targets.eta, shape="p-instance"),
            RatioRecord(prediction=5.0, peak=1.0, ratio=targets.gamma * 0.999, shape="constant"),
        ),
    )


@pytest.fixture
def flat_report():
    """Backtest report on a flat market"""
    config = BacktestConfig(
        window_len=10, stride=10, kind=ProblemKind.INTEGRAL, lambda_grid_size=3
    )
    return run_backtest(config, synthesize_prices(40, vol=0.0))


@pytest.fixture
def checks():
    return [
        CheckResult(name="lambert-w", passed=True, detail="residuals below 1e-12"),
        CheckResult(name="frontier [theta=5]", passed=False, detail="gap at lambda 0.3"),
    ]


class TestGetFormatter:
    """Test formatter lookup"""

    def test_known(self):
        """Test table and json are available"""
        assert isinstance(get_formatter("table"), TableFormatter)
        assert isinstance(get_formatter("json"), JsonFormatter)

    def test_unknown(self):
        """Test other names are rejected"""
        with pytest.raises(ValueError):
            get_formatter("xml")


class TestJsonFormatter:
    """Test JSON output"""

    def test_certificate_without_records(self, report):
        """Test records are left out by default"""
        data = json.loads(JsonFormatter().format_certificate(report))
        assert "records" not in data
        assert data["targets"]["kind"] == "one-way"
        assert data["measured_consistency"] == report.measured_consistency

    def test_certificate_with_records(self, report):
        """Test records are kept on request"""
        data = json.loads(JsonFormatter().format_certificate(report, with_records=True))
        assert [r["shape"] for r in data["records"]] == ["p-instance", "constant"]

    def test_frontier(self):
        """Test one object per λ sample"""
        points = pareto_frontier(5.0, ProblemKind.INTEGRAL, 3)
        data = json.loads(JsonFormatter().format_frontier(points))
        assert [p["lam"] for p in data] == [0.0, 0.5, 1.0]

    def test_threshold_round_trips(self, unit_bounds):
        """Test the dumped threshold validates back"""
        phi = build_threshold_one_way(unit_bounds, 0.5, 3.0)
        assert PiecewiseThreshold.model_validate_json(JsonFormatter().format_threshold(phi)) == phi

    def test_checks(self, checks):
        """Test the overall verdict"""
        data = json.loads(JsonFormatter().format_checks(checks))
        assert data["passed"] is False
        assert len(data["checks"]) == 2

    def test_backtest(self, flat_report):
        """Test the report serializes with its configuration"""
        data = json.loads(JsonFormatter().format_backtest(flat_report))
        assert data["windows_evaluated"] == 3
        assert data["config"]["kind"] == "max-search"


class TestTableFormatter:
    """Test rich table output"""

    def test_certificate(self, report):
        """Test the summary names both measures and the problem"""
        output = TableFormatter().format_certificate(report)
        assert "CERTIFICATE (one-way" in output
        assert "consistency" in output
        assert "robustness" in output
        assert "RECORDS" not in output

    def test_certificate_records(self, report):
        """Test the records section on request"""
        output = TableFormatter().format_certificate(report, with_records=True)
        assert "RECORDS (2)" in output
        assert "p-instance" in output

    def test_frontier(self):
        """Test the point count in the title"""
        output = TableFormatter().format_frontier(pareto_frontier(5.0, ProblemKind.FRACTIONAL, 5))
        assert "TRADE-OFF CURVE (5 points)" in output

    def test_threshold(self, unit_bounds):
        """Test segment shapes are labelled"""
        output = TableFormatter().format_threshold(build_threshold_one_way(unit_bounds, 0.5, 3.0))
        assert "THRESHOLD on [1, 5]" in output
        assert "exp (rate" in output

    def test_backtest(self, flat_report):
        """Test window count and algorithms are listed"""
        output = TableFormatter().format_backtest(flat_report)
        assert "Windows: 3" in output
        assert "worst_case" in output
        assert "alf" in output

    def test_checks(self, checks):
        """Test pass and fail counts"""
        output = TableFormatter().format_checks(checks)
        assert "VERIFY (1 passed, 1 failed)" in output
        assert "FAIL" in output


class TestCsvFrames:
    """Test plot-ready CSV tables"""

    def test_curve(self):
        """Test x,y columns"""
        text = write_csv(curve_frame([0.0, 1.0], [2.0, 3.0]))
        assert text.splitlines() == ["x,y", "0.0,2.0", "1.0,3.0"]

    def test_frontier_header(self):
        """Test λ is written as lambda"""
        frame = frontier_frame(pareto_frontier(5.0, ProblemKind.FRACTIONAL, 4))
        assert list(frame.columns) == ["lambda", "gamma", "eta", "lower_bound"]
        assert len(frame) == 4

    def test_threshold_samples(self, unit_bounds):
        """Test the sampled threshold is non-decreasing and ends at U"""
        frame = threshold_frame(build_threshold_one_way(unit_bounds, 0.5, 3.0), 51)
        assert list(frame.columns) == ["w", "phi"]
        assert (np.diff(frame["phi"].to_numpy()) >= -1e-9).all()
        assert frame["phi"].iloc[-1] == pytest.approx(5.0)

    def test_trace(self, unit_bounds):
        """Test one row per step"""
        policy = make_policy(unit_bounds, ProblemKind.FRACTIONAL, 0.5, 3.0)
        trace = run_instance(policy, Instance(prices=(1.0, 2.0, 4.0)))
        assert len(trace_frame(trace)) == 3

    def test_boxplot(self, flat_report):
        """Test one row per algorithm"""
        frame = boxplot_frame(flat_report)
        assert set(frame["algorithm"]) == {"worst_case", "offline_best", "alf", "best_static"}
        assert frame["median"].tolist() == pytest.approx([1.0] * 4)

    def test_write_to_file(self, tmp_path):
        """Test nothing is returned when a target is given"""
        path = tmp_path / "curve.csv"
        assert write_csv(curve_frame([0.0], [1.0]), path) is None
        assert path.read_text().startswith("x,y")
