import logging
import os
import sys
from typing import Optional
from logging.handlers import RotatingFileHandler

# Constants
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
MAX_BYTES = 10 * 1024 * 1024  # 10MB
BACKUP_COUNT = 5


def setup_logging(
    level: str = "WARNING",
    log_file: Optional[str] = None,
    log_format: str = LOG_FORMAT,
) -> None:
    """Setup logging for the command-line tool.

    Diagnostics go to stderr; stdout carries only JSON or CSV output.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Clear existing handlers
    root_logger.handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter("%(levelname)s - %(name)s - %(message)s"))
    root_logger.addHandler(console_handler)

    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=MAX_BYTES,
            backupCount=BACKUP_COUNT,
            encoding='utf-8'
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(log_format, LOG_DATE_FORMAT))
        root_logger.addHandler(file_handler)

    # Set logging level for third-party modules
    logging.getLogger('asyncio').setLevel(logging.WARNING)

    logging.debug("Logging system initialized")


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the specified name"""
    return logging.getLogger(name)


# Create default logger for the application
app_logger = get_logger("nestexp")

# Separate logger for quadrature diagnostics
quadrature_logger = get_logger("nestexp.quadrature")

# Separate logger for Monte Carlo runs
mc_logger = get_logger("nestexp.mc")

# Separate logger for the acceptance suite
verify_logger = get_logger("nestexp.verify")
