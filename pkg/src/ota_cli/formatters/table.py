"""Table Formatter"""

from typing import Union

from rich.console import Console
from rich.rule import Rule
from rich.table import Table
from rich.text import Text

from ota_cli.analysis.certify import CertificateReport
from ota_cli.analysis.frontier import FrontierPoint
from ota_cli.formatters.base import Formatter
from ota_cli.harness.backtest import BacktestReport, SweepReport
from ota_cli.harness.verify import CheckResult
from ota_cli.thresholds.piecewise import ExpShape, PiecewiseThreshold


class Section:
    """Title, divider and content rendered as one block"""

    def __init__(self, title: str, content: Union[Text, str, Table]):
        self.title = title
        self.content = content

    def render(self, console: Console) -> None:
        console.print()
        console.print(f"[bold cyan]{self.title}[/bold cyan]")
        console.print(Rule(style="dim"))
        console.print(self.content)


def _num(value: float) -> str:
    return f"{value:.6g}"


class TableFormatter(Formatter):
    """Rich table formatter"""

    def __init__(self, width: int = 100) -> None:
        self.console = Console(width=width, force_terminal=False, highlight=False)

    def _render(self, sections: list[Section]) -> str:
        with self.console.capture() as capture:
            for section in sections:
                section.render(self.console)
        return capture.get()

    def format_certificate(self, report: CertificateReport, with_records: bool = False) -> str:
        targets = report.targets
        summary = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
        summary.add_column("Measure", style="cyan")
        summary.add_column("Measured", justify="right")
        summary.add_column("Target", justify="right")
        summary.add_column("Worst (P, p)", style="dim")
        rows = (
            ("consistency", report.measured_consistency, targets.eta, "consistency"),
            ("robustness", report.measured_robustness, targets.gamma, "robustness"),
        )
        for name, measured, target, key in rows:
            prediction, peak = report.worst_instances[key]
            style = "green" if measured <= target * 1.001 else "red"
            summary.add_row(
                name,
                Text(_num(measured), style=style),
                _num(target),
                f"({_num(prediction)}, {_num(peak)})",
            )

        kappa = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
        kappa.add_column("ξ", justify="right")
        kappa.add_column("κ(ξ)", justify="right")
        for xi, value in report.kappa_curve:
            kappa.add_row(_num(xi), _num(value))

        title = (
            f"CERTIFICATE ({targets.kind.label}, "
            f"λ={_num(targets.lam)}, θ={_num(targets.theta)})"
        )
        sections = [Section(title, summary), Section("ERROR-DEPENDENT RATIO", kappa)]
        if with_records:
            records = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
            for column in ("P", "p", "ratio", "shape"):
                records.add_column(column, justify="right" if column != "shape" else "left")
            for record in report.records:
                records.add_row(
                    _num(record.prediction), _num(record.peak), _num(record.ratio), record.shape
                )
            sections.append(Section(f"RECORDS ({len(report.records)})", records))
        return self._render(sections)

    def format_frontier(self, points: list[FrontierPoint]) -> str:
        table = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
        for column in ("λ", "γ", "η", "lower bound"):
            table.add_column(column, justify="right")
        for point in points:
            table.add_row(
                _num(point.lam), _num(point.gamma), _num(point.eta), _num(point.lower_bound)
            )
        return self._render([Section(f"TRADE-OFF CURVE ({len(points)} points)", table)])

    def format_threshold(self, phi: PiecewiseThreshold) -> str:
        table = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
        table.add_column("w", justify="right")
        table.add_column("Shape", style="cyan")
        table.add_column("φ(start)", justify="right")
        table.add_column("φ(end)", justify="right")
        for segment in phi.segments:
            shape = segment.shape
            label = f"exp (rate {_num(shape.rate)})" if isinstance(shape, ExpShape) else "flat"
            table.add_row(
                f"[{_num(segment.w_start)}, {_num(segment.w_end)})",
                label,
                _num(segment.start_value),
                _num(segment.end_value),
            )
        title = f"THRESHOLD on [{_num(phi.bounds.lower)}, {_num(phi.bounds.upper)}]"
        return self._render([Section(title, table)])

    def format_backtest(self, report: BacktestReport) -> str:
        table = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
        table.add_column("Algorithm", style="cyan")
        for column in ("min", "q1", "median", "q3", "max", "mean", "avg profit"):
            table.add_column(column, justify="right")
        for name, summary in report.summaries.items():
            curve = report.cumulative_profit.get(name, ())
            table.add_row(
                name,
                _num(summary.minimum),
                _num(summary.q1),
                _num(summary.median),
                _num(summary.q3),
                _num(summary.maximum),
                _num(summary.mean),
                _num(curve[-1]) if curve else "-",
            )

        info = Text()
        info.append("Windows: ", style="cyan")
        info.append(f"{report.windows_evaluated}\n")
        info.append("Bounds:  ", style="cyan")
        info.append(f"[{_num(report.bounds.lower)}, {_num(report.bounds.upper)}]\n")
        if report.best_static_lambda is not None:
            info.append("Best static λ: ", style="cyan")
            info.append(f"{_num(report.best_static_lambda)}\n")
        if report.regret:
            info.append("Learner regret/T: ", style="cyan")
            info.append(f"{_num(report.regret[-1] / len(report.regret))}\n")
        return self._render([Section("BACKTEST", info), Section("PROFIT RATIOS", table)])

    def format_sweep(self, report: SweepReport) -> str:
        table = Table(show_header=True, header_style="bold", box=None, padding=(0, 2))
        for column in ("Error", "Crash"):
            table.add_column(column, justify="right")
        table.add_column("Algorithm", style="cyan")
        for column in ("q1", "median", "q3", "mean"):
            table.add_column(column, justify="right")
        for row in report.to_boxplot_rows():
            table.add_row(
                _num(row["error_level"]),
                _num(row["crash_prob"]),
                row["algorithm"],
                _num(row["q1"]),
                _num(row["median"]),
                _num(row["q3"]),
                _num(row["mean"]),
            )
        levels, crashes = len(report.error_levels), len(report.crash_probs)
        title = f"SWEEP ({levels} error levels x {crashes} crash probabilities)"
        return self._render([Section(title, table)])

    def format_checks(self, results: list[CheckResult]) -> str:
        table = Table(show_header=False, box=None, padding=(0, 1))
        table.add_column("Status", width=4)
        table.add_column("Check", style="cyan", no_wrap=True)
        table.add_column("Detail", style="dim")
        for result in results:
            status = Text("ok", style="green") if result.passed else Text("FAIL", style="red")
            table.add_row(status, result.name, result.detail)
        failed = sum(not r.passed for r in results)
        title = f"VERIFY ({len(results) - failed} passed, {failed} failed)"
        return self._render([Section(title, table)])
