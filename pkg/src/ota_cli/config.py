"""Configuration management module"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

from ota_cli.utils.exceptions import ConfigError
from ota_cli.utils.logging import LEVELS


@dataclass
class OtaConfig:
    """Process-wide defaults"""

    seed: int = 0
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "OtaConfig":
        """Load configuration from environment variables

        Environment Variables:
            OTA_SEED: Default seed for seeded commands (default: 0)
            OTA_LOG_LEVEL: Default log level name (default: WARNING)

        Raises:
            ConfigError: Invalid configuration
        """
        load_dotenv()

        raw_seed = os.getenv("OTA_SEED", "0").strip()
        try:
            seed = int(raw_seed)
        except ValueError as e:
            raise ConfigError(f"OTA_SEED must be an integer, current value: {raw_seed}") from e

        config = cls(seed=seed, log_level=os.getenv("OTA_LOG_LEVEL", "WARNING").strip().upper())
        config.validate()
        return config

    def validate(self) -> None:
        """Validate configuration

        Raises:
            ConfigError: Invalid configuration
        """
        if self.seed < 0:
            raise ConfigError(f"OTA_SEED must be non-negative, current value: {self.seed}")
        if self.log_level not in LEVELS:
            raise ConfigError(
                f"OTA_LOG_LEVEL must be one of {', '.join(LEVELS)}, current value: {self.log_level}"
            )
