"""Growth statistics of a continued-fraction prefix, carried as certified
rational intervals.

For each index n with a_{n+1} known, two dimensionless ratios are enclosed:

    R_n = -log a_{n+1} / log |x - p_n/q_n|    (quotient growth vs error decay)
    S_n =  log q_n^2   / log |x - p_n/q_n|    (denominator growth vs error decay)

R_n lies in [0, 1) and, for n >= 2, S_n in (-1, 0); the two are linked
through theta_n = q_n^2 |x - p_n/q_n| by R_n - (S_n + 1) -> 0, because
|log(a_{n+1} theta_n)| <= log 3 at every index (the gap bound: 1/theta_n
lies between a_{n+1} and a_{n+1} + 2).

Ratios are never reported as bare floats: the enclosures inherit the
1e-12-relative log slack from numutil, so every interval is a certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .cfcore import CFExpansion, ConvergentRecurrence, _denominators_at, error_interval, theta_interval
from .errors import DomainError
from .intervals import RationalInterval
from .numutil import div_bounds, log_int_bounds, sci_string

# Indices n < BURN_IN are ignored by membership-style counts: denominators
# there are tiny and the log-ratios carry no asymptotic information.
BURN_IN = 5

_ZERO = RationalInterval(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class GrowthRecord:
    """Certified statistics at one index n."""

    n: int
    a_next: int
    q_bits: int
    theta: RationalInterval
    err: RationalInterval
    r: RationalInterval
    s: RationalInterval


@dataclass(frozen=True)
class GapCheck:
    """Exact-arithmetic checks tying theta_n to a_{n+1} and the error."""

    identity_holds: bool
    gap_bound_holds: bool


@dataclass(frozen=True)
class GrowthTrace:
    """Per-index records for n = 1 .. N-1 of an N-quotient expansion."""

    records: tuple[GrowthRecord, ...]
    quotient_count: int

    CSV_COLUMNS = ("n", "a_next", "q_bits", "err_lo", "err_hi", "R_lo", "R_hi", "S_lo", "S_hi")

    def row_dicts(self, sig: int = 12) -> Iterable[dict[str, str | int]]:
        """Rows in the fixed CSV/JSONL schema; err bounds are rendered as
        scientific decimals with `sig` significant digits (their exact
        rational values stay available on the records)."""
        for rec in self.records:
            yield {
                "n": rec.n,
                "a_next": sci_string(Fraction(rec.a_next), sig) if rec.a_next >= 10**18 else str(rec.a_next),
                "q_bits": rec.q_bits,
                "err_lo": sci_string(rec.err.lo, sig),
                "err_hi": sci_string(rec.err.hi, sig),
                "R_lo": repr(float(rec.r.lo)),
                "R_hi": repr(float(rec.r.hi)),
                "S_lo": repr(float(rec.s.lo)),
                "S_hi": repr(float(rec.s.hi)),
            }

    def write_csv(self, fp: IO[str], sig: int = 12) -> None:
        fp.write(",".join(self.CSV_COLUMNS) + "\n")
        for row in self.row_dicts(sig):
            fp.write(",".join(str(row[c]) for c in self.CSV_COLUMNS) + "\n")

    def write_jsonl(self, fp: IO[str], sig: int = 12) -> None:
        for row in self.row_dicts(sig):
            fp.write(json.dumps(row, sort_keys=False) + "\n")


def _ratio_intervals(
    q_prev: int, q: int, a_next: int
) -> tuple[RationalInterval, RationalInterval, RationalInterval, RationalInterval]:
    """(theta, err, R, S) enclosures from the recurrence state at index n.

    Both error endpoints are unit fractions, so the log enclosures reduce
    to integer logs; ratio endpoints are floats rounded outward by one ulp
    and stored exactly as binary rationals.
    """
    theta = theta_interval(q_prev, q, a_next)
    err = error_interval(q_prev, q, a_next)
    # |log err| in [log(q q_{n+1}), log(q (q_{n+1} + q))], positive for n >= 1
    mag = (log_int_bounds(err.hi.denominator)[0], log_int_bounds(err.lo.denominator)[1])

    if a_next == 1:
        r = _ZERO
    else:
        r_lo, r_hi = div_bounds(log_int_bounds(a_next), mag)
        r = RationalInterval.from_float_bounds(r_lo, r_hi)

    if q == 1:
        s = _ZERO
    else:
        lq_lo, lq_hi = log_int_bounds(q)
        s_mag_lo, s_mag_hi = div_bounds((2.0 * lq_lo, 2.0 * lq_hi), mag)
        s = RationalInterval.from_float_bounds(-s_mag_hi, -s_mag_lo)
    return theta, err, r, s


def r_ratio(cf: CFExpansion, n: int) -> RationalInterval:
    """Enclosure of R_n; exactly [0, 0] when a_{n+1} = 1."""
    if n < 1:
        raise DomainError("r_ratio needs n >= 1")
    q_prev, q, a_next = _denominators_at(cf, n)
    return _ratio_intervals(q_prev, q, a_next)[2]


def s_ratio(cf: CFExpansion, n: int) -> RationalInterval:
    """Enclosure of S_n; contained in (-1, 0) for every n >= 2."""
    if n < 1:
        raise DomainError("s_ratio needs n >= 1")
    q_prev, q, a_next = _denominators_at(cf, n)
    return _ratio_intervals(q_prev, q, a_next)[3]


def gap_check(cf: CFExpansion, n: int) -> GapCheck:
    """Exact checks at index n.

    identity_holds: theta_bounds equals q_n^2 times error_bounds as exact
    rational intervals.  gap_bound_holds: |log(a_{n+1} theta)| <= log 3 for
    every theta in the enclosure, verified without logs as
    a_{n+1} * theta in [1/3, 3].
    """
    q_prev, q, a_next = _denominators_at(cf, n)
    theta = theta_interval(q_prev, q, a_next)
    err = error_interval(q_prev, q, a_next)
    identity = err.scale(Fraction(q * q)) == theta
    gap = a_next * theta.lo >= Fraction(1, 3) and a_next * theta.hi <= 3
    return GapCheck(identity_holds=identity, gap_bound_holds=gap)


def trace(cf: CFExpansion) -> GrowthTrace:
    """Records for all n = 1 .. len(cf) - 1, computed in one streaming pass."""
    if len(cf) < 2:
        raise DomainError("trace needs at least two quotients")
    rec = ConvergentRecurrence()
    rec.push(cf.quotients[0])
    records = []
    for n in range(1, len(cf)):
        a_next = cf.quotients[n]
        theta, err, r, s = _ratio_intervals(rec.q_prev, rec.q, a_next)
        records.append(
            GrowthRecord(n=n, a_next=a_next, q_bits=rec.q.bit_length(), theta=theta, err=err, r=r, s=s)
        )
        rec.push(a_next)
    return GrowthTrace(records=tuple(records), quotient_count=len(cf))


def exceedance_count(tr: GrowthTrace, tau: Fraction) -> int:
    """Number of indices n >= BURN_IN whose certified S_n lower bound exceeds tau."""
    tau = Fraction(tau)
    if not -1 < tau < 0:
        raise DomainError(f"threshold must lie in (-1, 0), got {tau}")
    return sum(1 for rec in tr.records if rec.n >= BURN_IN and rec.s.lo > tau)
