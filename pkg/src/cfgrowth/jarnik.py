"""Power-law approximation rates, the zero-infinity series classifier, and
closed-form dimension evaluators for the growth-target sets.

A rate spec (tau, eps) with tau in (-1, 0) and 0 <= eps < |tau| defines the
decreasing function rate(r) = r^(2/(tau+eps)), whose exponent is < -2.  The
set of reals approximable to within rate(q) by infinitely many fractions
p/q has s-dimensional Hausdorff measure 0 or infinity according to whether
the series sum_r r * rate(r)^s converges; for this power family the series
is sum_r r^(1 + 2s/(tau+eps)), so the verdict flips exactly at the critical
exponent s* = -(tau + eps), with the boundary s = s* on the infinite side
(the series is harmonic there).

The dimension evaluators return, for a target growth limit z (or its
shifted form alpha = z - 1), the Hausdorff dimension 1 - z (|alpha|) with
an infinite-measure flag, a full-measure marker at the z = 0 / alpha = -1
endpoint, and emptiness outside [0, 1] / [-1, 0].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import gmpy2
import mpmath

from .errors import BudgetError, DomainError

MAX_SERIES_TERMS = 10**8

DEFAULT_SAMPLE_NS = (10**3, 10**4, 10**5, 10**6)

# dimension-record kinds
DIMENSION = "dimension"
FULL_MEASURE = "full-measure"
EMPTY = "empty"


class MeasureClass(Enum):
    """Verdict for the s-dimensional Hausdorff measure (never computed as a number)."""

    ZERO = "Zero"
    INFINITY = "Infinity"


@dataclass(frozen=True)
class RateSpec:
    """Approximation-rate parameters; rate(r) = r^(2/(tau+eps))."""

    tau: Fraction
    eps: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", Fraction(self.tau))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not -1 < self.tau < 0:
            raise DomainError(f"tau must lie in (-1, 0), got {self.tau}")
        if not 0 <= self.eps < -self.tau:
            raise DomainError(f"eps must lie in [0, |tau|), got {self.eps}")

    @property
    def exponent(self) -> Fraction:
        """2/(tau+eps), always < -2."""
        return Fraction(2) / (self.tau + self.eps)


@dataclass(frozen=True)
class JarnikVerdict:
    """Measure classification at exponent s plus series diagnostics."""

    s: Fraction
    classification: MeasureClass
    series_exponent: Fraction
    partial_sums: tuple[tuple[int, float], ...]


def rate_value(spec: RateSpec, r: int) -> mpmath.mpf:
    """rate(r) = r^(2/(tau+eps)) as a high-precision real.

    Always <= r^-2, with equality never attained; monotone decreasing in r.
    """
    if r < 1:
        raise DomainError(f"r must be a positive integer, got {r}")
    e = spec.exponent
    with mpmath.workdps(40):
        base = mpmath.root(mpmath.mpf(r), e.denominator) if e.denominator > 1 else mpmath.mpf(r)
        return base ** e.numerator


def critical_exponent(spec: RateSpec) -> Fraction:
    """s* = -(tau + eps); the measure verdict flips across this value."""
    return -(spec.tau + spec.eps)


def series_exponent(spec: RateSpec, s: Fraction) -> Fraction:
    """Exponent of the classifying series sum_r r^(1 + 2s/(tau+eps))."""
    s = Fraction(s)
    if not 0 <= s < 1:
        raise DomainError(f"s must lie in [0, 1), got {s}")
    return 1 + 2 * s / (spec.tau + spec.eps)


def partial_sum(spec: RateSpec, s: Fraction, n: int) -> float:
    """Compensated sum of the first n terms of the classifying series.

    Exact-rational exponent, float terms, error-free-transform summation
    (math.fsum); at s = s* the exponent is exactly -1 and the result is the
    harmonic number H_n to float accuracy.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > MAX_SERIES_TERMS:
        raise BudgetError(f"n = {n} exceeds the term budget {MAX_SERIES_TERMS}")
    e = float(series_exponent(spec, s))
    return math.fsum(float(r) ** e for r in range(1, n + 1))


def measure_verdict(
    spec: RateSpec, s: Fraction, sample_ns: tuple[int, ...] = DEFAULT_SAMPLE_NS
) -> JarnikVerdict:
    """Classify the s-dimensional measure as Zero or Infinity.

    Zero iff the series converges iff its exponent is < -1 iff s > s*;
    the boundary s = s* diverges harmonically and is classified Infinity.
    `sample_ns` controls the diagnostic partial sums (pass () to skip).
    """
    s = Fraction(s)
    exponent = series_exponent(spec, s)
    classification = MeasureClass.INFINITY if exponent >= -1 else MeasureClass.ZERO
    sums = tuple((n, partial_sum(spec, s, n)) for n in sample_ns)
    return JarnikVerdict(s=s, classification=classification, series_exponent=exponent, partial_sums=sums)


def legendre_threshold(spec: RateSpec) -> int:
    """Smallest r0 with rate(r) < r^-2 / 2 for all r >= r0.

    Solves r^c > 2 exactly for c = -(2/(tau+eps) + 2) > 0; beyond r0 any
    fraction approximating x to within rate(q) is forced to be a convergent.
    """
    c = -(spec.exponent + 2)
    u, v = c.numerator, c.denominator
    root, _ = gmpy2.iroot(gmpy2.mpz(2) ** v, u)
    return int(root) + 1


@dataclass(frozen=True)
class DimensionVerdict:
    """Closed-form dimension record for one growth-target set.

    kind is "dimension" (theorem case, with the infinite-measure flag),
    "full-measure" (the Lebesgue-generic endpoint, dimension 1), or
    "empty" (target outside the attainable range).
    """

    kind: str
    dimension: Fraction | None
    measure_infinite: bool


def dim_r(z: Fraction) -> DimensionVerdict:
    """Dimension record for the set where the R statistic has limit z."""
    z = Fraction(z)
    if z < 0 or z > 1:
        return DimensionVerdict(kind=EMPTY, dimension=None, measure_infinite=False)
    if z == 0:
        return DimensionVerdict(kind=FULL_MEASURE, dimension=Fraction(1), measure_infinite=False)
    return DimensionVerdict(kind=DIMENSION, dimension=1 - z, measure_infinite=True)


def dim_s(alpha: Fraction) -> DimensionVerdict:
    """Dimension record for the set where the S statistic has limit alpha.

    Agrees with dim_r under the shift alpha = z - 1.
    """
    alpha = Fraction(alpha)
    if alpha < -1 or alpha > 0:
        return DimensionVerdict(kind=EMPTY, dimension=None, measure_infinite=False)
    if alpha == -1:
        return DimensionVerdict(kind=FULL_MEASURE, dimension=Fraction(1), measure_infinite=False)
    return DimensionVerdict(kind=DIMENSION, dimension=-alpha, measure_infinite=True)
