"""Arguments and helpers shared by the command handlers."""

import argparse
import time
from typing import Any, Dict

from config import get_config
from nestexp.charfn_inversion import QuadratureConfig
from utils.error_handling import ValidationError
from utils.helpers import build_manifest, write_json

TOL_RANGE = (1e-12, 1e-4)


def add_quadrature_arguments(parser: argparse.ArgumentParser) -> None:
    defaults = get_config("quick")
    parser.add_argument("--tol", type=float, default=defaults.ABS_TOL,
                        help=f"absolute tolerance in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
    parser.add_argument("--z-max", type=float, default=None,
                        help="truncation point (default 40/(n-1) + 5)")
    parser.add_argument("--max-nodes", type=int, default=defaults.MAX_NODES,
                        help="quadrature node budget")
    parser.add_argument("--small-z-cut", type=float, default=defaults.SMALL_Z_CUT,
                        help="radius of the analytic patch at z = 0")


def validate_tol(args: argparse.Namespace) -> None:
    if not TOL_RANGE[0] <= args.tol <= TOL_RANGE[1]:
        raise ValidationError(
            f"--tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]", {"tol": args.tol}
        )


def quadrature_from_args(n: int, args: argparse.Namespace) -> QuadratureConfig:
    validate_tol(args)
    return QuadratureConfig.for_index(
        n,
        abs_tol=args.tol,
        z_max=args.z_max,
        max_nodes=args.max_nodes,
        small_z_cut=args.small_z_cut,
    )


class Timer:
    """Wall-clock timer for the manifest."""

    def __init__(self):
        self.started = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started


def emit(command: str, parameters: Dict[str, Any], payload: Dict[str, Any], timer: Timer) -> None:
    """Write ``payload`` with its run manifest to stdout."""
    payload = dict(payload)
    payload["manifest"] = build_manifest(command, parameters, timer.elapsed)
    write_json(payload)
