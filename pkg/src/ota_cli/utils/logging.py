"""Logging setup for the command line"""

import logging

from rich.console import Console
from rich.logging import RichHandler

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def setup_logging(level: str = "WARNING", verbosity: int = 0) -> None:
    """Install a rich handler on stderr for the ``ota_cli`` logger tree

    Args:
        level: Base level name (from OTA_LOG_LEVEL)
        verbosity: Number of ``-v`` flags; 1 -> INFO, 2+ -> DEBUG
    """
    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1 and logging.getLevelName(level) > logging.INFO:
        level = "INFO"

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))

    logger = logging.getLogger("ota_cli")
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
