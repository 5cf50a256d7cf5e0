"""simulate command: Monte Carlo draws of Wₙ with selected checks."""

import argparse
import logging
from typing import Any, Dict, List

from config import get_config
from nestexp.distribution_core import CLOSED_FORM_INDICES, cdf_w_closed_form
from nestexp.monte_carlo import (
    MAX_SEED, DistTestReport, SamplingMethod, clt_check, empirical_cdf_at, equivalence_check,
    inverse_symmetry_check, ks_test, moment_check, moment_estimates, sample_wn
)
from utils.error_handling import EXIT_OK, EXIT_TOLERANCE, ValidationError, handle_errors
from .common import Timer, emit

logger = logging.getLogger(__name__)

MAX_SAMPLES = 10 ** 8
TEST_NAMES = ("moments", "ks-closed-form", "clt", "inverse-symmetry", "equivalence")


def _parse_tests(raw: str) -> List[str]:
    tests = [t.strip() for t in raw.split(",") if t.strip()] if raw else []
    unknown = sorted(set(tests) - set(TEST_NAMES))
    if unknown:
        raise ValidationError(f"Unknown tests: {', '.join(unknown)}",
                              {"known": list(TEST_NAMES)})
    return tests


def _run_test(name: str, args: argparse.Namespace, batch) -> DistTestReport:
    if name == "moments":
        return moment_check(batch)
    if name == "ks-closed-form":
        if args.n not in CLOSED_FORM_INDICES:
            raise ValidationError(f"ks-closed-form needs n <= 3, got {args.n}")
        return ks_test(batch, lambda w: cdf_w_closed_form(args.n, w), name="ks_closed_form")
    if name == "clt":
        return clt_check(args.n, args.samples, args.seed, workers=args.workers)
    if name == "inverse-symmetry":
        return inverse_symmetry_check(args.n, args.samples, args.seed, args.workers)
    # the second batch uses the next seed, wrapping at 2⁶⁴
    second_seed = (args.seed + 1) % (MAX_SEED + 1)
    return equivalence_check(args.n, args.samples, args.seed, second_seed, workers=args.workers)


@handle_errors
def cmd_simulate(args: argparse.Namespace) -> int:
    """Sample Wₙ, report moments and P(Wₙ <= 0), run the requested tests."""
    timer = Timer()
    if not 1 <= args.samples <= MAX_SAMPLES:
        raise ValidationError(f"--samples must lie in [1, {MAX_SAMPLES}]",
                              {"samples": args.samples})
    tests = _parse_tests(args.tests)
    batch = sample_wn(args.n, args.samples, args.seed, SamplingMethod(args.method),
                      args.workers)

    estimates: Dict[str, Any] = dict(moment_estimates(batch)) if args.samples > 1 else {}
    p_le_zero, se = empirical_cdf_at(batch, 0.0)
    estimates.update({"p_le_zero": p_le_zero, "p_le_zero_se": se})
    reports = [_run_test(name, args, batch) for name in tests]
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.error(f"Failed tests: {', '.join(failed)}")

    parameters = {
        "n": args.n, "samples": args.samples, "seed": args.seed,
        "method": args.method, "tests": tests, "workers": args.workers,
    }
    emit("simulate", parameters, {
        "estimates": estimates,
        "tests": reports,
        "passed": not failed,
    }, timer)
    return EXIT_TOLERANCE if failed else EXIT_OK


def setup_simulate_handlers(subparsers: argparse._SubParsersAction) -> None:
    """Register the simulate command."""
    defaults = get_config("quick")
    parser = subparsers.add_parser("simulate", help="Monte Carlo draws of W_n")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--samples", type=int, default=defaults.MC_SAMPLES)
    parser.add_argument("--seed", type=int, default=defaults.MC_SEED)
    parser.add_argument("--method", choices=[m.value for m in SamplingMethod],
                        default=SamplingMethod.LOG_SUM.value)
    parser.add_argument("--tests", default="",
                        help=f"comma-separated subset of {', '.join(TEST_NAMES)}")
    parser.add_argument("--workers", type=int, default=defaults.MC_WORKERS)
    parser.set_defaults(handler=cmd_simulate)
