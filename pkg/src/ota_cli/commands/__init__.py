"""Command Module"""

from ota_cli.commands.backtest import backtest
from ota_cli.commands.certify import certify
from ota_cli.commands.pareto import pareto
from ota_cli.commands.synth import synth
from ota_cli.commands.threshold import threshold
from ota_cli.commands.verify import verify

__all__ = ["backtest", "certify", "pareto", "synth", "threshold", "verify"]
