# dispatcher.py
import argparse
import logging
import sys
from typing import NoReturn, Optional, Sequence

from handlers import (
    setup_cdf_handlers,
    setup_kappa_handlers,
    setup_sequences_handlers,
    setup_simulate_handlers,
    setup_taylor_handlers,
    setup_verify_handlers,
)
from utils.error_handling import EXIT_USAGE

# Create logger
logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the documented code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CommandParser:
    """Create the parser with every command registered."""
    parser = CommandParser(
        prog="nestexp",
        description="Distribution sequence of nested exponential random variables",
    )
    parser.add_argument("--log-level", default="WARNING",
                        help="DEBUG, INFO, WARNING, ERROR or CRITICAL (stderr)")
    parser.add_argument("--log-file", default=None, help="also log to a rotating file")

    subparsers = parser.add_subparsers(dest="command", parser_class=CommandParser)
    subparsers.required = True

    setup_kappa_handlers(subparsers)
    setup_cdf_handlers(subparsers)
    setup_sequences_handlers(subparsers)
    setup_simulate_handlers(subparsers)
    setup_taylor_handlers(subparsers)
    setup_verify_handlers(subparsers)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
