"""Monte-Carlo verification of the almost-everywhere growth limits.

Samples are exact dyadic rationals x = m/2^bits with m odd and uniform, so
the Euclidean algorithm yields their true quotients.  A quotient a_n is
certified only while 2*bitlen(q_n) + guard_slack <= bits: past that point
the dyadic uncertainty 2^-bits reaches the Legendre scale 1/(2 q_n^2) and
later quotients would depend on digits the sample does not have.  On top
of the bit guard, the certified prefix is checked exactly: both endpoints
of the dyadic cell [x - 2^-bits, x + 2^-bits] must lie strictly inside the
prefix's cylinder, which makes the emitted prefix provably the common
prefix of every real in the cell.

For almost every x, log a_n / n -> 0 and -log|x - p_n/q_n| / n ->
pi^2/(6 log 2) = 2.37313822...; consequently the R statistic tends to 0.
monte_carlo estimates all three at a fixed index n over seeded independent
trials and is deterministic for a fixed master seed regardless of execution
order.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .cfcore import CFExpansion, ConvergentRecurrence, cylinder_interval, error_bounds, expand_rational
from .errors import BudgetError, DomainError
from .growth import r_ratio
from .numutil import derived_seed, log_fraction_bounds, log_int_bounds

# a.e. limit of -log|x - p_n/q_n| / n
LEVY_ERROR_RATE = math.pi**2 / (6 * math.log(2))

_MAX_RESAMPLE_ATTEMPTS = 100


@dataclass(frozen=True)
class SampleBudget:
    """Precision budget for one dyadic sample.

    bits         size of the dyadic grid (x = m/2^bits); must be >= 256
    n_target     number of certified quotients a run wants; log q_n grows
                 by ~1.19 nats per index for typical x, so bits should be
                 at least ~3.5 * n_target plus slack
    guard_slack  extra bits demanded beyond the Legendre scale
    gauss_warmup quotients discarded after sampling (shifts the point by
                 the corresponding tail map); 0 = plain uniform sampling
    """

    bits: int = 2048
    n_target: int = 300
    guard_slack: int = 64
    gauss_warmup: int = 0

    def __post_init__(self) -> None:
        if self.bits < 256:
            raise DomainError(f"bits must be >= 256, got {self.bits}")
        if self.n_target < 1:
            raise DomainError(f"n_target must be >= 1, got {self.n_target}")
        if self.guard_slack < 0 or self.gauss_warmup < 0:
            raise DomainError("guard_slack and gauss_warmup must be >= 0")

    @classmethod
    def for_target(cls, n_target: int, guard_slack: int = 64, gauss_warmup: int = 0) -> "SampleBudget":
        """Budget sized so n_target quotients certify with high probability."""
        bits = max(256, 4 * n_target + guard_slack + 192)
        return cls(bits=bits, n_target=n_target, guard_slack=guard_slack, gauss_warmup=gauss_warmup)


class CertifiedSample(NamedTuple):
    x: Fraction
    prefix: CFExpansion


@dataclass(frozen=True)
class TrialStats:
    """Per-sample statistics at one index n."""

    log_quotient_rate: float  # log a_n / n
    error_rate: float  # -log|x - p_n/q_n| / n, midpoint of the certified enclosure
    r_mid: float  # midpoint of the R_n enclosure


@dataclass(frozen=True)
class StatSummary:
    mean: float
    median: float
    stddev: float
    ci95_lo: float
    ci95_hi: float


@dataclass(frozen=True)
class MonteCarloResult:
    trials: int
    n: int
    resampled: int
    log_quotient_rate: StatSummary
    error_rate: StatSummary
    r_mid: StatSummary
    per_trial: tuple[TrialStats, ...]


def sample_x(seed: int, budget: SampleBudget) -> CertifiedSample:
    """Draw x = m/2^bits (m odd, uniform) with its certified quotient prefix.

    The prefix is exactly the expansion prefix shared by every real within
    2^-bits of x; perturbing m by +-1 cannot change it.  Raises BudgetError
    if not even the first quotient certifies.
    """
    rng = random.Random(seed)
    m = rng.getrandbits(budget.bits) | 1
    den = 1 << budget.bits
    x = Fraction(m, den)
    quotients = expand_rational(m, den).quotients

    rec = ConvergentRecurrence()
    ladder = []  # (p_{k-1}, q_{k-1}, p_k, q_k) after each push
    kept = []
    for a in quotients:
        rec.push(a)
        if 2 * rec.q.bit_length() + budget.guard_slack > budget.bits:
            break
        kept.append(a)
        ladder.append((rec.p_prev, rec.q_prev, rec.p, rec.q))

    cell_lo = Fraction(m - 1, den)
    cell_hi = Fraction(m + 1, den)
    while kept:
        lo, hi = cylinder_interval(kept)
        if lo < cell_lo and cell_hi < hi:
            break
        kept.pop()
        ladder.pop()
    if not kept or len(kept) <= budget.gauss_warmup:
        raise BudgetError(
            f"bits={budget.bits} certifies only {len(kept)} quotients "
            f"(warmup {budget.gauss_warmup})"
        )

    if budget.gauss_warmup:
        k = budget.gauss_warmup
        p_prev, q_prev, p, q = ladder[k - 1]
        # x = (p_k + p_{k-1} T)/(q_k + q_{k-1} T) with T the tail value
        x = (p - q * x) / (q_prev * x - p_prev)
        kept = kept[k:]
    return CertifiedSample(x=x, prefix=CFExpansion(tuple(kept)))


def trial_stats(x: Fraction, prefix: CFExpansion, n: int) -> TrialStats:
    """The three per-sample statistics at index n (needs a_{n+1} certified)."""
    if n < 1 or n + 1 > len(prefix):
        raise DomainError(f"index {n} outside the certified range 1..{len(prefix) - 1}")
    a_n = prefix.quotient(n)
    la_lo, la_hi = log_int_bounds(a_n)
    err = error_bounds(prefix, n)
    le_lo = log_fraction_bounds(err.lo)[0]
    le_hi = log_fraction_bounds(err.hi)[1]
    return TrialStats(
        log_quotient_rate=(la_lo + la_hi) / 2 / n,
        error_rate=-(le_lo + le_hi) / 2 / n,
        r_mid=r_ratio(prefix, n).mid_float(),
    )


def _summarize(values: list[float]) -> StatSummary:
    mean = statistics.fmean(values)
    sd = statistics.stdev(values) if len(values) > 1 else 0.0
    half = 1.96 * sd / math.sqrt(len(values))
    return StatSummary(
        mean=mean,
        median=statistics.median(values),
        stddev=sd,
        ci95_lo=mean - half,
        ci95_hi=mean + half,
    )


def monte_carlo(trials: int, n: int, budget: SampleBudget, master_seed: int) -> MonteCarloResult:
    """Aggregate the trial statistics over seeded independent samples.

    Per-trial seeds are hashed from (master_seed, index, attempt), so the
    result depends only on the master seed; samples whose certified prefix
    is shorter than n + 1 are resampled with a fresh derived seed and
    counted in `resampled`.
    """
    if trials < 30:
        raise DomainError(f"need at least 30 trials, got {trials}")
    per = []
    resampled = 0
    for i in range(trials):
        for attempt in range(_MAX_RESAMPLE_ATTEMPTS):
            sample = sample_x(derived_seed(master_seed, i, attempt), budget)
            if len(sample.prefix) >= n + 1:
                break
            resampled += 1
        else:
            raise BudgetError(
                f"trial {i}: no sample certified {n + 1} quotients within "
                f"{_MAX_RESAMPLE_ATTEMPTS} attempts; raise bits"
            )
        per.append(trial_stats(sample.x, sample.prefix, n))
    return MonteCarloResult(
        trials=trials,
        n=n,
        resampled=resampled,
        log_quotient_rate=_summarize([t.log_quotient_rate for t in per]),
        error_rate=_summarize([t.error_rate for t in per]),
        r_mid=_summarize([t.r_mid for t in per]),
        per_trial=tuple(per),
    )
