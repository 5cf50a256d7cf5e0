"""Acceptance suite: every reproducible claim checked end to end.

Criteria run concurrently in worker threads; reports are always returned in
criterion order.
"""

import asyncio
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import special

from config import BaseConfig, get_config
from logging_config import verify_logger as logger
from monitoring.metrics import metrics_collector
from nestexp.charfn_inversion import QuadratureConfig, cdf_wn, kappa
from nestexp.constants import EULER_GOMPERTZ, EULER_MASCHERONI, KAPPA_TABLE
from nestexp.distribution_core import cdf_w3, g_derivatives
from nestexp.integer_sequences import (
    bell_numbers, bell_triangle, berend_tassa_holds, coefficient_table, gould_numbers,
    gould_numbers_from_derivatives
)
from nestexp.monte_carlo import (
    SamplingMethod, clt_check, equivalence_check, inverse_symmetry_check, moment_check,
    sample_wn, top_heaviness
)
from nestexp.special_functions import expint_ei
from nestexp.taylor_engine import (
    SeriesQuery, euler_maclaurin_gamma, hardy_delta, prop5_gap, taylor_partial_sum
)

DELTA_AGREEMENT_TOL = 1e-10
GAMMA_AGREEMENT_TOL = 1e-9
GAMMA_CONSTANT_TOL = 1e-14
CLOSED_FORM_TOL = 1e-9
TAYLOR_TOL = 1e-8
PROP5_TOL = 1e-11
TABLE_DIGIT_TOL = 5e-7

TAYLOR_GRID = [(k, w) for k in (0, 1, 2) for w in (-2.0, -0.5, 0.5, 1.0)]
CLOSED_FORM_GRID = np.linspace(-8.0, 8.0, 25)
BEREND_TASSA_ROWS = 50
RATIO_PAIR = (20, 40)


@dataclass(frozen=True)
class VerificationReport:
    """Computed value against its reference for one criterion."""
    criterion: int
    name: str
    value: float
    reference: float
    tolerance: float
    passed: bool
    runtime_s: float
    budget_s: float
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def within_budget(self) -> bool:
        return self.runtime_s <= self.budget_s


@dataclass(frozen=True)
class SuiteResult:
    profile: str
    reports: Tuple[VerificationReport, ...]
    metrics: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failed(self) -> List[int]:
        return [r.criterion for r in self.reports if not r.passed]


def table_digits_match(value: float, printed: float, truncated: bool) -> bool:
    """Does ``value`` reproduce the printed digits of a κ table row?

    Truncated rows cover [printed, printed + 1e-6); the check is a 5e-7 ball
    around the middle of that interval. Exact rows use a 5e-7 ball around the
    printed value.
    """
    centre = printed + TABLE_DIGIT_TOL if truncated else printed
    return abs(value - centre) <= TABLE_DIGIT_TOL


class AcceptanceSuite:
    """Runs the eight acceptance criteria for one profile.

    ``delta_ref`` and ``gamma_ref`` are the embedded constants under test;
    replacing them lets the suite prove it notices a corrupted constant.
    """

    def __init__(
        self,
        config: Optional[BaseConfig] = None,
        delta_ref: float = EULER_GOMPERTZ,
        gamma_ref: float = EULER_MASCHERONI
    ):
        self.config = config or get_config("quick")
        self.delta_ref = delta_ref
        self.gamma_ref = gamma_ref
        self.criteria: List[Tuple[int, str, float, Callable[[], Any]]] = [
            (1, "kappa_table_reproduction", 5.0, self.check_kappa_table),
            (2, "delta_triple_agreement", 1.0, self.check_delta_agreement),
            (3, "gamma_cross_identification", 2.0, self.check_gamma),
            (4, "closed_form_vs_inversion", 10.0, self.check_closed_forms),
            (5, "integer_machinery", 2.0, self.check_integer_machinery),
            (6, "taylor_convergence", 5.0, self.check_taylor),
            (7, "prop5_limit", 1.0, self.check_prop5),
            (8, "monte_carlo", 900.0 if self.config.is_full() else 60.0, self.check_monte_carlo),
        ]

    def _quadrature(self, n: int) -> QuadratureConfig:
        return QuadratureConfig.for_index(
            n,
            abs_tol=self.config.ABS_TOL,
            small_z_cut=self.config.SMALL_Z_CUT,
            max_nodes=self.config.MAX_NODES,
        )

    def check_kappa_table(self):
        rows = {}
        worst = 0.0
        passed = True
        for n, entry in sorted(KAPPA_TABLE.items()):
            value = kappa(n, self._quadrature(n) if n > 1 else None).value
            ok = table_digits_match(value, entry.printed, entry.truncated)
            rows[str(n)] = {"value": value, "printed": entry.printed, "match": ok}
            worst = max(worst, abs(value - entry.printed))
            passed = passed and ok
        return passed, worst, 0.0, TABLE_DIGIT_TOL, {"rows": rows}

    def check_delta_agreement(self):
        by_inversion = kappa(3, self._quadrature(3)).value
        by_ei = -math.e * float(expint_ei(-1.0))
        by_hardy = hardy_delta(self.config.GAMMA_TERMS, self.gamma_ref)
        candidates = [by_inversion, by_ei, by_hardy, self.delta_ref]
        spread = max(candidates) - min(candidates)
        details = {
            "inversion": by_inversion,
            "ei_identity": by_ei,
            "hardy": by_hardy,
            "embedded": self.delta_ref,
        }
        return spread <= DELTA_AGREEMENT_TOL, by_inversion, self.delta_ref, \
            DELTA_AGREEMENT_TOL, details

    def check_gamma(self):
        oracle = float(euler_maclaurin_gamma())
        kappa5 = kappa(5, self._quadrature(5)).value
        constant_gap = abs(self.gamma_ref - oracle)
        passed = (abs(kappa5 - oracle) <= GAMMA_AGREEMENT_TOL
                  and constant_gap <= GAMMA_CONSTANT_TOL)
        details = {"euler_maclaurin": oracle, "embedded": self.gamma_ref,
                   "embedded_gap": constant_gap}
        return passed, kappa5, oracle, GAMMA_AGREEMENT_TOL, details

    def check_closed_forms(self):
        cfg2, cfg3 = self._quadrature(2), self._quadrature(3)
        logistic = special.expit(CLOSED_FORM_GRID)
        closed3 = cdf_w3(CLOSED_FORM_GRID)
        gap2 = max(
            abs(cdf_wn(2, w, cfg2).value - ref) for w, ref in zip(CLOSED_FORM_GRID, logistic)
        )
        gap3 = max(
            abs(cdf_wn(3, w, cfg3).value - ref) for w, ref in zip(CLOSED_FORM_GRID, closed3)
        )
        worst = max(gap2, gap3)
        return worst <= CLOSED_FORM_TOL, worst, 0.0, CLOSED_FORM_TOL, \
            {"n2_max_gap": gap2, "n3_max_gap": gap3}

    def check_integer_machinery(self):
        count = self.config.SEQUENCE_COUNT
        bell_ok = bell_numbers(count) == bell_triangle(count)
        gould_ok = gould_numbers(count) == gould_numbers_from_derivatives(count)
        bound_ok = all(ok for _, ok in berend_tassa_holds(BEREND_TASSA_ROWS))
        table = coefficient_table(max(count, RATIO_PAIR[1] + 1))
        early = table.ratio_gap(RATIO_PAIR[0], self.delta_ref)
        late = table.ratio_gap(RATIO_PAIR[1], self.delta_ref)
        details = {
            "bell_matches_triangle": bell_ok,
            "gould_matches_derivatives": gould_ok,
            "berend_tassa": bound_ok,
            "gap_20": early,
            "gap_40": late,
        }
        return bell_ok and gould_ok and bound_ok and late < early, late, early, 0.0, details

    def check_taylor(self):
        worst_best = 0.0
        cells = {}
        for k, w in TAYLOR_GRID:
            oracle = g_derivatives(w, k)[k]
            table = coefficient_table(self.config.TAYLOR_MAX_M + k + 1)
            best = math.inf
            best_m = -1
            for m in range(self.config.TAYLOR_MAX_M + 1):
                partial = taylor_partial_sum(
                    SeriesQuery(k=k, w=w, m=m, delta_ref=self.delta_ref), table
                )
                gap = abs(partial - oracle)
                if gap < best:
                    best, best_m = gap, m
                if gap <= TAYLOR_TOL:
                    break
            cells[f"k={k},w={w:g}"] = {"best_gap": best, "m": best_m}
            worst_best = max(worst_best, best)
        return worst_best <= TAYLOR_TOL, worst_best, 0.0, TAYLOR_TOL, {"cells": cells}

    def check_prop5(self):
        gap = prop5_gap(-30.0)
        return abs(gap + self.gamma_ref) <= PROP5_TOL, gap, -self.gamma_ref, PROP5_TOL, {}

    def check_monte_carlo(self):
        cfg = self.config
        seed = cfg.MC_SEED
        workers = cfg.MC_WORKERS
        reports = {}
        batches = []
        for n in range(1, cfg.MC_MAX_N + 1):
            batch = sample_wn(n, cfg.MC_SAMPLES, seed + n, SamplingMethod.LOG_SUM, workers)
            batches.append(batch)
            reports[f"moments_n{n}"] = moment_check(batch)
        for n in (3, 6):
            reports[f"equivalence_n{n}"] = equivalence_check(
                n, cfg.KS_SAMPLES, seed + 100 + n, seed + 200 + n, workers=workers
            )
        for n in (2, 4):
            reports[f"inverse_symmetry_n{n}"] = inverse_symmetry_check(
                n, cfg.KS_SAMPLES, seed + 300 + n, workers
            )
        for n in (200, 201):
            reports[f"clt_n{n}"] = clt_check(n, cfg.CLT_SAMPLES, seed + n, workers=workers)
        heaviness = top_heaviness(batches)

        passed = all(r.passed for r in reports.values()) and heaviness.passed
        worst = max(r.statistic / r.threshold for r in reports.values())
        details: Dict[str, Any] = {name: r for name, r in reports.items()}
        details["top_heaviness"] = heaviness
        return passed, worst, 1.0, 1.0, details

    def _run_criterion(self, index: int, name: str, budget: float, check) -> VerificationReport:
        started = time.perf_counter()
        try:
            passed, value, reference, tolerance, details = check()
            error = None
        except Exception as e:
            logger.error(f"Criterion {index} ({name}) raised: {e}", exc_info=True)
            passed, value, reference, tolerance = False, math.nan, math.nan, 0.0
            details = {"error": str(e)}
            error = str(e)
        runtime = time.perf_counter() - started
        metrics_collector.record_operation(f"criterion_{index}", runtime, error=error)
        if runtime > budget:
            logger.warning(f"Criterion {index} ({name}) took {runtime:.2f}s, budget {budget:.0f}s")
        level = logging.INFO if passed else logging.ERROR
        logger.log(level, f"Criterion {index} {name}: {'PASS' if passed else 'FAIL'} "
                          f"({runtime:.2f}s)")
        return VerificationReport(
            criterion=index, name=name, value=float(value), reference=float(reference),
            tolerance=float(tolerance), passed=bool(passed), runtime_s=runtime,
            budget_s=budget, details=details,
        )

    async def run_all_tests(self) -> SuiteResult:
        """Run every criterion concurrently and collect reports in criterion order."""
        logger.info(f"Starting acceptance suite ({self.config.PROFILE} profile)...")
        reports = await asyncio.gather(*(
            asyncio.to_thread(self._run_criterion, index, name, budget, check)
            for index, name, budget, check in self.criteria
        ))
        result = SuiteResult(
            profile=self.config.PROFILE,
            reports=tuple(sorted(reports, key=lambda r: r.criterion)),
            metrics=metrics_collector.get_metrics(),
        )
        logger.info(f"Acceptance suite completed: failed criteria {result.failed or 'none'}")
        return result


def run_suite(
    profile: str = "quick",
    delta_ref: float = EULER_GOMPERTZ,
    gamma_ref: float = EULER_MASCHERONI
) -> SuiteResult:
    """Synchronous entry point used by the verify command."""
    suite = AcceptanceSuite(get_config(profile), delta_ref=delta_ref, gamma_ref=gamma_ref)
    return asyncio.run(suite.run_all_tests())
