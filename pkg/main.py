"""Command-line entry point."""

import logging
import sys
from typing import Optional, Sequence

import pydantic

from config import get_config_class
from dispatcher import parse_args
from logging_config import setup_logging
from utils.error_handling import EXIT_USAGE

logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse flags, set up logging on stderr and run one command."""
    args = parse_args(argv)
    try:
        # the settings model validates the logging flags
        settings = get_config_class("quick")(LOG_LEVEL=args.log_level, LOG_FILE=args.log_file)
    except pydantic.ValidationError as e:
        print(f"nestexp: error: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(settings.LOG_LEVEL, settings.LOG_FILE, settings.LOG_FORMAT)
    logger.debug(f"Running command {args.command}")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
