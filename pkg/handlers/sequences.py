"""sequences command: the Bell/Gould table as CSV."""

import argparse
import logging
import sys

from nestexp.constants import EULER_GOMPERTZ
from nestexp.integer_sequences import MAX_TABLE_COUNT, coefficient_table
from utils.error_handling import EXIT_OK, ValidationError, handle_errors
from utils.helpers import build_manifest, csv_text, write_json
from .common import Timer

logger = logging.getLogger(__name__)

CSV_HEADER = ["k", "bell", "gould", "ratio_gap"]


@handle_errors
def cmd_sequences(args: argparse.Namespace) -> int:
    """Write rows k = 0 … upto; integers stay exact, the manifest goes to stderr."""
    timer = Timer()
    if not 0 <= args.upto <= MAX_TABLE_COUNT - 1:
        raise ValidationError(
            f"--upto must lie in [0, {MAX_TABLE_COUNT - 1}]", {"upto": args.upto}
        )
    table = coefficient_table(args.upto + 1)
    rows = (
        (pair.k, pair.bell, pair.gould, table.ratio_gap(pair.k, args.delta_ref))
        for pair in table
    )
    sys.stdout.write(csv_text(CSV_HEADER, rows))
    sys.stdout.flush()
    write_json(
        build_manifest("sequences", {"upto": args.upto, "delta_ref": args.delta_ref},
                       timer.elapsed),
        stream=sys.stderr,
    )
    return EXIT_OK


def setup_sequences_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register the sequences command."""
    parser = subparsers.add_parser("sequences", help="Bell and Gould numbers as CSV")
    parser.add_argument("--upto", type=int, required=True, help="last index k (<= 500)")
    parser.add_argument("--delta-ref", type=float, default=EULER_GOMPERTZ,
                        help="reference value of the Euler-Gompertz constant")
    parser.set_defaults(handler=cmd_sequences)
