"""Package logger.

Records go to stderr; stdout is reserved for command results, which
tests and shell pipelines parse.
"""

import logging
import sys
from typing import Optional

from hashembed.core.config import settings
from hashembed.core.exceptions import ConfigError

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
RECORD_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def parse_level(level: str) -> int:
    """
    Numeric logging level for a level name, case-insensitive.

    Raises:
        ConfigError: If ``level`` is not one of :data:`LEVELS`
    """
    name = str(level).strip().upper()
    if name not in LEVELS:
        raise ConfigError(f"log level must be one of {', '.join(LEVELS)}, got {level!r}")
    return getattr(logging, name)


def set_level(level: str, target: Optional[logging.Logger] = None) -> None:
    """Move ``target`` (the package logger by default) and its handlers to ``level``."""
    target = target or logger
    value = parse_level(level)
    target.setLevel(value)
    for handler in target.handlers:
        handler.setLevel(value)


def setup_logger(
    name: str = "hashembed",
    level: Optional[str] = None,
) -> logging.Logger:
    """
    Logger with a single stderr handler.

    Calling it again for the same name replaces the handler instead of
    stacking a second one.

    Args:
        name: Logger name
        level: Level name; defaults to the LOG_LEVEL setting

    Raises:
        ConfigError: If the level name is unknown
    """
    target = logging.getLogger(name)
    target.handlers.clear()
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(fmt=RECORD_FORMAT, datefmt=DATE_FORMAT))
    target.addHandler(handler)
    set_level(level or settings.log_level, target)
    return target


try:
    logger = setup_logger()
except ConfigError as e:
    logger = setup_logger(level="INFO")
    logger.warning(f"Ignoring LOG_LEVEL setting: {e}")
