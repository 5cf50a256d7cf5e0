"""Monte Carlo sampling of Wₙ and the distributional checks built on it.

Two constructions are sampled on the log scale:

* ``nested``  -- Y₁ ∼ Exp(1), Yⱼ ∼ Exp(rate Y_{j−1}), i.e. Lⱼ = ln Xⱼ − L_{j−1};
* ``log_sum`` -- Wₙ = Σ_{j≤⌈n/2⌉} ln Xⱼ − Σ_{j>⌈n/2⌉} ln Xⱼ,

with Xⱼ standard exponential drawn as −ln U. Draws are produced in chunks of
``CHUNK_SIZE``; chunk i uses a Philox generator seeded from the i-th child of
``SeedSequence(seed)``, so the output does not depend on the worker count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from logging_config import mc_logger as logger
from utils.error_handling import ParityError, ValidationError, log_operation
from .constants import EULER_MASCHERONI
from .distribution_core import wn_moments

CHUNK_SIZE = 1 << 14
MAX_SEED = 2 ** 64 - 1
U_LOW = 2.0 ** -53
U_HIGH = 1.0 - 2.0 ** -53

# asymptotic KS critical value at α ≈ 0.01
KS_CRITICAL = 1.63
CLT_CRITICAL = 2.2
MOMENT_Z_LIMIT = 5.0
CLT_MIN_INDEX = 100
CLT_MIN_COUNT = 10_000

ReferenceCdf = Callable[[np.ndarray], np.ndarray]


class SamplingMethod(str, Enum):
    NESTED = "nested"
    LOG_SUM = "log_sum"


@dataclass(frozen=True)
class SampleBatch:
    """Draws of Wₙ together with everything needed to regenerate them."""
    n: int
    method: SamplingMethod
    seed: int
    values: np.ndarray
    count: int

    def __post_init__(self):
        if self.values.shape != (self.count,):
            raise ValidationError(
                "values length must equal count",
                {"count": self.count, "length": int(self.values.size)}
            )
        self.values.setflags(write=False)


@dataclass(frozen=True)
class DistTestReport:
    """Outcome of one statistical check; passed iff statistic <= threshold."""
    name: str
    statistic: float
    threshold: float
    passed: bool
    sample_count: int

    @classmethod
    def from_statistic(
        cls, name: str, statistic: float, threshold: float, sample_count: int
    ) -> "DistTestReport":
        statistic = float(statistic)
        threshold = float(threshold)
        return cls(name=name, statistic=statistic, threshold=threshold,
                   passed=bool(statistic <= threshold), sample_count=int(sample_count))


@dataclass(frozen=True)
class TopHeavinessReport:
    """P(Wₙ <= 0) estimates for odd n with their standard errors."""
    estimates: Tuple[Tuple[int, float, float], ...]
    above_half: bool
    decreasing: bool

    @property
    def passed(self) -> bool:
        return self.above_half and self.decreasing


def _validate_sampling(n: int, count: int, seed: int) -> None:
    if n < 1:
        raise ValidationError(f"Sequence index must be at least 1, got {n}")
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")
    if not 0 <= seed <= MAX_SEED:
        raise ValidationError("seed must be a 64-bit unsigned integer", {"seed": seed})


def _log_exponentials(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """ln X for X = −ln U, shape (n, size), with U kept off both endpoints."""
    u = np.clip(rng.random((n, size)), U_LOW, U_HIGH)
    return np.log(-np.log(u))


def _draw_chunk(
    n: int,
    size: int,
    method: SamplingMethod,
    seed_sequence: np.random.SeedSequence
) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed_sequence))
    log_x = _log_exponentials(rng, n, size)
    if method is SamplingMethod.LOG_SUM:
        split = (n + 1) // 2
        return log_x[:split].sum(axis=0) - log_x[split:].sum(axis=0)
    level = log_x[0].copy()
    for j in range(1, n):
        level = log_x[j] - level
    return level


@log_operation("sample_wn")
def sample_wn(
    n: int,
    count: int,
    seed: int,
    method: SamplingMethod = SamplingMethod.LOG_SUM,
    workers: int = 1
) -> SampleBatch:
    """Draw ``count`` values of Wₙ; same (n, method, seed, count) gives identical bits."""
    _validate_sampling(n, count, seed)
    method = SamplingMethod(method)
    if workers < 1:
        raise ValidationError(f"workers must be at least 1, got {workers}")

    chunk_count = math.ceil(count / CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(chunk_count)
    sizes = [min(CHUNK_SIZE, count - i * CHUNK_SIZE) for i in range(chunk_count)]
    logger.debug(
        f"Sampling W_{n} by {method.value}: count={count} seed={seed} "
        f"chunks={chunk_count} workers={workers}"
    )

    if workers == 1 or chunk_count == 1:
        chunks = [_draw_chunk(n, size, method, child) for size, child in zip(sizes, children)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(
                lambda job: _draw_chunk(n, job[0], method, job[1]), zip(sizes, children)
            ))
    values = np.concatenate(chunks)
    return SampleBatch(n=n, method=method, seed=seed, values=values, count=count)


def empirical_cdf_at(batch: SampleBatch, point: float) -> Tuple[float, float]:
    """Fraction of draws <= point and its binomial standard error."""
    estimate = float(np.count_nonzero(batch.values <= point)) / batch.count
    std_err = math.sqrt(estimate * (1.0 - estimate) / batch.count)
    return estimate, std_err


def ks_test(
    batch: SampleBatch,
    reference_cdf: ReferenceCdf,
    name: str = "ks"
) -> DistTestReport:
    """One-sample KS distance against ``reference_cdf`` with threshold 1.63/√N."""
    result = stats.kstest(batch.values, reference_cdf)
    return DistTestReport.from_statistic(
        name, result.statistic, KS_CRITICAL / math.sqrt(batch.count), batch.count
    )


def clt_scale(n: int) -> float:
    return math.pi * math.sqrt(n / 6.0)


def clt_check(
    n: int,
    count: int,
    seed: int,
    reference_mean: Optional[float] = None,
    workers: int = 1
) -> DistTestReport:
    """KS test of Wₙ/(π√(n/6)) against a unit-variance normal.

    The reference centre defaults to the exact scaled mean, −γ/(π√(n/6)) for
    odd n and 0 for even n; ``reference_mean`` overrides it.
    """
    if n < CLT_MIN_INDEX:
        raise ValidationError(f"clt_check needs n >= {CLT_MIN_INDEX}, got {n}")
    if count < CLT_MIN_COUNT:
        raise ValidationError(f"clt_check needs count >= {CLT_MIN_COUNT}, got {count}")
    scale = clt_scale(n)
    if reference_mean is None:
        reference_mean = -EULER_MASCHERONI / scale if n % 2 == 1 else 0.0
    batch = sample_wn(n, count, seed, SamplingMethod.LOG_SUM, workers)
    result = stats.kstest(batch.values / scale, stats.norm(loc=reference_mean).cdf)
    return DistTestReport.from_statistic(
        "clt", result.statistic, CLT_CRITICAL / math.sqrt(count), count
    )


def _two_sample(name: str, first: np.ndarray, second: np.ndarray) -> DistTestReport:
    result = stats.ks_2samp(first, second)
    count = min(first.size, second.size)
    return DistTestReport.from_statistic(
        name, result.statistic, KS_CRITICAL * math.sqrt(2.0 / count), count
    )


def equivalence_check(
    n: int,
    count: int,
    seed_a: int,
    seed_b: int,
    n_other: Optional[int] = None,
    workers: int = 1
) -> DistTestReport:
    """Two-sample KS between a nested batch of Wₙ and a log-sum batch.

    ``n_other`` swaps the index of the log-sum batch, which should then fail.
    """
    if seed_a == seed_b:
        raise ValidationError("equivalence_check needs two distinct seeds", {"seed": seed_a})
    nested = sample_wn(n, count, seed_a, SamplingMethod.NESTED, workers)
    log_sum = sample_wn(n_other or n, count, seed_b, SamplingMethod.LOG_SUM, workers)
    return _two_sample("equivalence", nested.values, log_sum.values)


def inverse_symmetry_check(n: int, count: int, seed: int, workers: int = 1) -> DistTestReport:
    """Two-sample KS between Wₙ and −Wₙ (Yₙ and 1/Yₙ), even n only."""
    if n % 2 == 1:
        raise ParityError(f"Inverse symmetry holds for even n only, got {n}", {"n": n})
    batch = sample_wn(n, count, seed, SamplingMethod.LOG_SUM, workers)
    return _two_sample("inverse_symmetry", batch.values, -batch.values)


def moment_check(batch: SampleBatch) -> DistTestReport:
    """Largest z-score of the sample mean and variance against the exact moments.

    The variance standard error uses the fourth central moment.
    """
    if batch.count < 2:
        raise ValidationError("moment_check needs at least two draws")
    mean_ref, var_ref = wn_moments(batch.n)
    values = batch.values
    mean = float(np.mean(values))
    centred = values - mean
    variance = float(np.var(values, ddof=1))
    fourth = float(np.mean(centred ** 4))
    se_mean = math.sqrt(variance / batch.count)
    se_var = math.sqrt(max(fourth - variance ** 2, 0.0) / batch.count)
    z_mean = abs(mean - mean_ref) / se_mean
    z_var = abs(variance - var_ref) / se_var
    logger.debug(
        f"W_{batch.n} moments: mean={mean:.6g} (z={z_mean:.2f}) "
        f"variance={variance:.6g} (z={z_var:.2f})"
    )
    return DistTestReport.from_statistic(
        "moments", max(z_mean, z_var), MOMENT_Z_LIMIT, batch.count
    )


def moment_estimates(batch: SampleBatch) -> Mapping[str, float]:
    mean_ref, var_ref = wn_moments(batch.n)
    return {
        "mean": float(np.mean(batch.values)),
        "variance": float(np.var(batch.values, ddof=1)),
        "mean_ref": mean_ref,
        "variance_ref": var_ref,
    }


def top_heaviness(batches: Sequence[SampleBatch], margin: float = 4.0) -> TopHeavinessReport:
    """P(Wₙ <= 0) for odd-n batches: above 1/2 by ``margin`` SE and decreasing in n."""
    odd = sorted((b for b in batches if b.n % 2 == 1), key=lambda b: b.n)
    if not odd:
        raise ParityError("top_heaviness needs at least one odd-n batch")
    estimates: List[Tuple[int, float, float]] = []
    for batch in odd:
        p, se = empirical_cdf_at(batch, 0.0)
        estimates.append((batch.n, p, se))
    above_half = all(p - 0.5 > margin * se for _, p, se in estimates)
    decreasing = all(
        later[1] < earlier[1] for earlier, later in zip(estimates, estimates[1:])
    )
    return TopHeavinessReport(tuple(estimates), above_half, decreasing)
