"""kappa command: κₙ = F_{Yₙ}(1) = F_{Wₙ}(0)."""

import argparse
import logging

from nestexp.charfn_inversion import kappa
from utils.error_handling import EXIT_OK, ValidationError, handle_errors
from .common import Timer, add_quadrature_arguments, emit, quadrature_from_args, validate_tol

logger = logging.getLogger(__name__)


@handle_errors
def cmd_kappa(args: argparse.Namespace) -> int:
    """Print κₙ with its error bookkeeping."""
    timer = Timer()
    if args.n < 1:
        raise ValidationError(f"--n must be at least 1, got {args.n}")
    validate_tol(args)
    cfg = quadrature_from_args(args.n, args) if args.n >= 2 else None
    result = kappa(args.n, cfg)
    logger.info(f"kappa_{args.n} = {result.value:.17g}")

    parameters = {"n": args.n, "tol": args.tol, "quadrature": cfg.to_dict() if cfg else None}
    emit("kappa", parameters, {
        "value": result.value,
        "est_error": result.est_error,
        "nodes_used": result.nodes_used,
        "truncation_bound": result.truncation_bound,
        "method": "closed_form" if args.n == 1 else "gil_pelaez",
    }, timer)
    return EXIT_OK


def setup_kappa_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register the kappa command."""
    parser = subparsers.add_parser("kappa", help="the constant F_Yn(1)")
    parser.add_argument("--n", type=int, required=True, help="sequence index n >= 1")
    add_quadrature_arguments(parser)
    parser.set_defaults(handler=cmd_kappa)
