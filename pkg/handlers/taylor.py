"""taylor command: a partial sum of the G series against its oracle."""

import argparse
import logging

from nestexp.constants import EULER_GOMPERTZ
from nestexp.distribution_core import g_derivatives
from nestexp.taylor_engine import SeriesQuery, Summation, remainder_shape, taylor_partial_sum
from utils.error_handling import EXIT_OK, handle_errors
from .common import Timer, emit

logger = logging.getLogger(__name__)


@handle_errors
def cmd_taylor(args: argparse.Namespace) -> int:
    timer = Timer()
    query = SeriesQuery(k=args.k, w=args.w, m=args.m, delta_ref=args.delta_ref)
    partial = taylor_partial_sum(query, summation=Summation(args.summation))
    oracle = g_derivatives(args.w, args.k)[args.k]
    remainder = remainder_shape(args.m, args.k, args.w) if args.m >= 1 else None
    if remainder is not None and not remainder.converged:
        logger.warning(f"Remainder envelope still growing at m = {args.m}, w = {args.w}")

    parameters = {
        "k": args.k, "w": args.w, "m": args.m,
        "delta_ref": args.delta_ref, "summation": args.summation,
    }
    emit("taylor", parameters, {
        "partial_sum": partial,
        "oracle": oracle,
        "gap": abs(partial - oracle),
        "remainder": remainder,
    }, timer)
    return EXIT_OK


def setup_taylor_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register the taylor command."""
    parser = subparsers.add_parser("taylor", help="Taylor partial sum of the k-th derivative of G")
    parser.add_argument("--k", type=int, required=True, help="derivative order")
    parser.add_argument("--w", type=float, required=True, help="expansion argument")
    parser.add_argument("--m", type=int, required=True, help="partial-sum order (<= 500)")
    parser.add_argument("--delta-ref", type=float, default=EULER_GOMPERTZ)
    parser.add_argument("--summation", choices=[s.value for s in Summation],
                        default=Summation.FORWARD.value)
    parser.set_defaults(handler=cmd_taylor)
