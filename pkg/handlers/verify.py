"""verify command: the acceptance suite."""

import argparse
import logging

from nestexp.constants import EULER_GOMPERTZ, EULER_MASCHERONI
from system_tests import run_suite
from utils.error_handling import EXIT_OK, VerificationError, handle_errors
from .common import Timer, emit

logger = logging.getLogger(__name__)


@handle_errors
def cmd_verify(args: argparse.Namespace) -> int:
    timer = Timer()
    result = run_suite(args.profile, delta_ref=args.delta_ref, gamma_ref=args.gamma_ref)
    parameters = {
        "profile": args.profile,
        "delta_ref": args.delta_ref,
        "gamma_ref": args.gamma_ref,
    }
    emit("verify", parameters, {
        "passed": result.passed,
        "failed": result.failed,
        "reports": result.reports,
        "metrics": result.metrics,
    }, timer)
    if not result.passed:
        raise VerificationError(
            f"Acceptance criteria failed: {result.failed}", {"failed": result.failed}
        )
    return EXIT_OK


def setup_verify_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register the verify command."""
    parser = subparsers.add_parser("verify", help="run the acceptance suite")
    parser.add_argument("--profile", choices=("quick", "full"), default="quick")
    # constants under test; overriding them must make the suite fail
    parser.add_argument("--delta-ref", type=float, default=EULER_GOMPERTZ,
                        help=argparse.SUPPRESS)
    parser.add_argument("--gamma-ref", type=float, default=EULER_MASCHERONI,
                        help=argparse.SUPPRESS)
    parser.set_defaults(handler=cmd_verify)
