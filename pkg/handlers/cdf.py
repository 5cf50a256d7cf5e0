"""cdf command: F_{Yₙ}(y) or F_{Wₙ}(w), closed form when one exists."""

import argparse
import logging
import math

from nestexp.charfn_inversion import cdf_wn
from nestexp.distribution_core import CLOSED_FORM_INDICES, cdf_w_closed_form, cdf_y_exact
from utils.error_handling import EXIT_OK, ValidationError, handle_errors
from .common import Timer, add_quadrature_arguments, emit, quadrature_from_args

logger = logging.getLogger(__name__)


@handle_errors
def cmd_cdf(args: argparse.Namespace) -> int:
    """Print the CDF of Yₙ or Wₙ at one point.

    The two scales are linked by y = eʷ; n <= 3 uses the closed forms,
    larger n the Gil-Pelaez inversion.
    """
    timer = Timer()
    if args.n < 1:
        raise ValidationError(f"--n must be at least 1, got {args.n}")
    if args.scale == "y" and not args.at > 0.0:
        raise ValidationError("--scale y needs --at > 0", {"at": args.at})
    if not math.isfinite(args.at):
        raise ValidationError("--at must be finite", {"at": args.at})

    parameters = {"scale": args.scale, "n": args.n, "at": args.at, "tol": args.tol}
    if args.n in CLOSED_FORM_INDICES:
        if args.scale == "y":
            value = float(cdf_y_exact(args.n, args.at))
        else:
            value = float(cdf_w_closed_form(args.n, args.at))
        payload = {"value": value, "est_error": 0.0, "method": "closed_form"}
    else:
        w = math.log(args.at) if args.scale == "y" else args.at
        cfg = quadrature_from_args(args.n, args)
        result = cdf_wn(args.n, w, cfg)
        parameters["quadrature"] = cfg.to_dict()
        payload = {
            "value": result.value,
            "est_error": result.est_error,
            "nodes_used": result.nodes_used,
            "truncation_bound": result.truncation_bound,
            "method": "gil_pelaez",
        }
    logger.info(f"F(n={args.n}, {args.scale}={args.at}) = {payload['value']:.17g}")
    emit("cdf", parameters, payload, timer)
    return EXIT_OK


def setup_cdf_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register the cdf command."""
    parser = subparsers.add_parser("cdf", help="CDF of Y_n or W_n = ln Y_n")
    parser.add_argument("--scale", choices=("y", "w"), default="y")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--at", type=float, required=True, help="evaluation point")
    add_quadrature_arguments(parser)
    parser.set_defaults(handler=cmd_cdf)
