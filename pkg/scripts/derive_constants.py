"""Derive the reference constants γ and δ at 30 digits.

γ comes from the Euler–Maclaurin expansion of the harmonic sum, δ from the
Hardy relation with that γ; δ is cross-checked against δ = e·E1(1) = −e·Ei(−1).
Exits non-zero when the embedded 15-digit constants disagree.
"""

import argparse
import logging
import os
import sys

import mpmath

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from logging_config import setup_logging  # noqa: E402
from nestexp.constants import EULER_GOMPERTZ, EULER_MASCHERONI  # noqa: E402
from nestexp.taylor_engine import euler_maclaurin_gamma  # noqa: E402

logger = logging.getLogger(__name__)

DIGITS = 30
HARDY_TERMS = 60
# embedded constants carry 15 significant digits
EMBEDDED_TOL = 1e-15


def hardy_delta_mp(gamma: mpmath.mpf, terms: int = HARDY_TERMS) -> mpmath.mpf:
    series = mpmath.fsum(
        mpmath.mpf((-1) ** (k + 1)) / (k * mpmath.factorial(k)) for k in range(1, terms + 1)
    )
    return mpmath.e * (series - gamma)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--digits", type=int, default=DIGITS)
    parser.add_argument("--log-level", default="INFO")
    args = parser.parse_args()
    setup_logging(args.log_level.upper())

    with mpmath.workdps(args.digits + 10):
        gamma = euler_maclaurin_gamma(dps=args.digits + 10)
        delta_hardy = hardy_delta_mp(gamma)
        delta_ei = mpmath.e * mpmath.e1(1)
        print(f"gamma       {mpmath.nstr(gamma, args.digits)}")
        print(f"delta_hardy {mpmath.nstr(delta_hardy, args.digits)}")
        print(f"delta_ei    {mpmath.nstr(delta_ei, args.digits)}")

        disagreement = abs(delta_hardy - delta_ei)
        gamma_gap = abs(gamma - EULER_MASCHERONI)
        delta_gap = abs(delta_hardy - EULER_GOMPERTZ)

    ok = True
    if disagreement > mpmath.mpf(10) ** (-args.digits):
        logger.error(f"Hardy and Ei routes disagree by {mpmath.nstr(disagreement, 5)}")
        ok = False
    if gamma_gap > EMBEDDED_TOL or delta_gap > EMBEDDED_TOL:
        logger.error(
            f"Embedded constants drifted: gamma gap {float(gamma_gap):.3g}, "
            f"delta gap {float(delta_gap):.3g}"
        )
        ok = False
    if ok:
        logger.info("Embedded constants agree with the derived values")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
