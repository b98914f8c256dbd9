# config/logging.py
import sys
from typing import Optional

from loguru import logger

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} - {name} - {level} - {message}"


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a single stderr sink. Library modules only import `logger`;
    entry points (CLI, API) call this once.
    """
    from config.settings import settings

    logger.remove()
    logger.add(sys.stderr, level=(level or settings.log_level).upper(), format=LOG_FORMAT)
