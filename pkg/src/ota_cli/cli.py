"""CLI Main Entry Point"""

import sys

import rich_click as click

from ota_cli import __version__
from ota_cli.config import OtaConfig
from ota_cli.utils.exceptions import OtaError
from ota_cli.utils.logging import setup_logging

click.rich_click.TEXT_MARKUP = "rich"
click.rich_click.SHOW_ARGUMENTS = True
click.rich_click.GROUP_ARGUMENTS_OPTIONS = True
click.rich_click.STYLE_ERRORS_SUGGESTION = "yellow italic"
click.rich_click.ERRORS_SUGGESTION = "Try running the '--help' flag for more information."
click.rich_click.MAX_WIDTH = 100
click.rich_click.COMMAND_GROUPS = {
    "ota": [
        {
            "name": "Analysis",
            "commands": ["certify", "pareto", "threshold", "verify"],
        },
        {
            "name": "Experiments",
            "commands": ["backtest", "synth"],
        },
    ]
}


@click.group()
@click.version_option(version=__version__)
@click.option("-v", "--verbose", count=True, help="Log progress to stderr (-v info, -vv debug)")
@click.pass_context
def main(ctx: click.Context, verbose: int) -> None:
    """OTA - online conversion with untrusted predictions

    Threshold designs for 1-max-search and one-way trading that trade
    consistency against robustness, with certification and backtests.

    Optional environment variables (or a .env file):
    - OTA_SEED: default seed for seeded commands
    - OTA_LOG_LEVEL: default log level
    """
    ctx.ensure_object(dict)

    if ctx.invoked_subcommand is None or "--help" in sys.argv[1:]:
        return

    try:
        config = OtaConfig.from_env()
    except OtaError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)
    ctx.obj["config"] = config
    setup_logging(config.log_level, verbose)


from ota_cli.commands.backtest import backtest  # noqa: E402
from ota_cli.commands.certify import certify  # noqa: E402
from ota_cli.commands.pareto import pareto  # noqa: E402
from ota_cli.commands.synth import synth  # noqa: E402
from ota_cli.commands.threshold import threshold  # noqa: E402
from ota_cli.commands.verify import verify  # noqa: E402

main.add_command(certify)
main.add_command(pareto)
main.add_command(threshold)
main.add_command(verify)
main.add_command(backtest)
main.add_command(synth)


if __name__ == "__main__":
    main()
