"""Exact continued-fraction engine for numbers in (0, 1).

A number x in (0, 1) is represented by the positive integer partial
quotients of x = [a1, a2, ...] (no integer part).  The module provides
Euclidean expansion of rationals, the convergent recurrence

    p_n = a_n p_{n-1} + p_{n-2},   q_n = a_n q_{n-1} + q_{n-2},

with seeds (p_{-1}, q_{-1}) = (1, 0) and (p_0, q_0) = (0, 1), rigorous
interval enclosures of the approximation error |x - p_n/q_n| and of the
normalized error theta_n = q_n^2 |x - p_n/q_n|, and the Legendre
forced-convergent criterion |x - p/q| < 1/(2 q^2).

theta_n equals 1/(a'_{n+1} + q_{n-1}/q_n), where a'_{n+1} is the quotient
a_{n+1} plus the remaining tail of the expansion.  Since the tail lies in
[0, 1], bracketing a'_{n+1} by [a_{n+1}, a_{n+1} + 1] yields exact rational
interval enclosures that require only the next quotient to be known.
Endpoints are kept closed: for a finite expansion the tail at the last
index is exactly 0, so the true value can sit on the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainError, InvariantError
from .intervals import RationalInterval
from .numutil import big_mul, coprime_fraction


@dataclass(frozen=True)
class CFExpansion:
    """Finite prefix of partial quotients of some x in (0, 1).

    `canonical` means the trailing quotient is >= 2 (for length >= 2), the
    normal form produced by the Euclidean algorithm; rationals also admit a
    second form ending [..., a_N - 1, 1], which `evaluate` accepts.
    """

    quotients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "quotients", tuple(int(a) for a in self.quotients))
        for a in self.quotients:
            if a < 1:
                raise DomainError(f"partial quotients must be >= 1, got {a}")

    @property
    def canonical(self) -> bool:
        return len(self.quotients) < 2 or self.quotients[-1] >= 2

    def quotient(self, n: int) -> int:
        """The quotient a_n, 1-indexed."""
        if not 1 <= n <= len(self.quotients):
            raise DomainError(f"quotient index {n} outside 1..{len(self.quotients)}")
        return self.quotients[n - 1]

    def prefix(self, length: int) -> "CFExpansion":
        if not 1 <= length <= len(self.quotients):
            raise DomainError(f"prefix length {length} outside 1..{len(self.quotients)}")
        return CFExpansion(self.quotients[:length])

    def __len__(self) -> int:
        return len(self.quotients)

    def __iter__(self) -> Iterator[int]:
        return iter(self.quotients)


@dataclass(frozen=True)
class Convergent:
    """The n-th convergent p_n/q_n, stored as a coprime big-integer pair."""

    n: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


class ConvergentRecurrence:
    """Running (p, q) ladder; push(a) advances one index.

    State after k pushes: (p, q) = (p_k, q_k) and (p_prev, q_prev) =
    (p_{k-1}, q_{k-1}).  Fresh instances start at index 0 with the seeds
    above, so the determinant identity q_n p_{n-1} - p_n q_{n-1} = (-1)^n
    holds at every index.
    """

    __slots__ = ("n", "p_prev", "q_prev", "p", "q")

    def __init__(self) -> None:
        self.n = 0
        self.p_prev, self.q_prev = 1, 0
        self.p, self.q = 0, 1

    def push(self, a: int) -> tuple[int, int]:
        if a < 1:
            raise DomainError(f"partial quotients must be >= 1, got {a}")
        self.p, self.p_prev = big_mul(a, self.p) + self.p_prev, self.p
        self.q, self.q_prev = big_mul(a, self.q) + self.q_prev, self.q
        self.n += 1
        return self.p, self.q


def expand_rational(num: int, den: int) -> CFExpansion:
    """Continued-fraction expansion of num/den in (0, 1) via Euclid.

    Inputs are reduced internally; the result is canonical and
    evaluate(expand_rational(p, q)) == p/q exactly.
    """
    if den <= 0 or num <= 0 or num >= den:
        raise DomainError(f"x = {num}/{den} must satisfy 0 < x < 1")
    g = math.gcd(num, den)
    num, den = num // g, den // g
    quotients = []
    while num:
        a, r = divmod(den, num)
        quotients.append(a)
        den, num = num, r
    return CFExpansion(tuple(quotients))


def evaluate(cf: CFExpansion) -> Fraction:
    """Exact rational value of a finite expansion (canonical or not)."""
    if len(cf) == 0:
        raise DomainError("cannot evaluate an empty expansion")
    rec = ConvergentRecurrence()
    for a in cf:
        rec.push(a)
    return Fraction(rec.p, rec.q)


def convergents(cf: CFExpansion, upto: int | None = None) -> list[Convergent]:
    """Convergents p_1/q_1 .. p_upto/q_upto of the expansion."""
    if upto is None:
        upto = len(cf)
    if not 1 <= upto <= len(cf):
        raise DomainError(f"upto={upto} outside 1..{len(cf)}")
    rec = ConvergentRecurrence()
    out = []
    for a in cf.quotients[:upto]:
        p, q = rec.push(a)
        out.append(Convergent(rec.n, p, q))
    return out


def _denominators_at(cf: CFExpansion, n: int) -> tuple[int, int, int]:
    """(q_{n-1}, q_n, a_{n+1}) after walking the recurrence to index n."""
    if n < 0 or n + 1 > len(cf):
        raise DomainError(f"index {n} needs quotient a_{n + 1}; expansion has {len(cf)}")
    rec = ConvergentRecurrence()
    for a in cf.quotients[:n]:
        rec.push(a)
    return rec.q_prev, rec.q, cf.quotients[n]


def theta_interval(q_prev: int, q: int, a_next: int) -> RationalInterval:
    """Enclosure of theta_n from (q_{n-1}, q_n, a_{n+1}) alone.

    Endpoints q_n/(q_{n+1} + q_n) and q_n/q_{n+1} are coprime pairs:
    consecutive denominators have determinant +-1, and adding q_n to
    q_{n+1} preserves the gcd.
    """
    q_next = big_mul(a_next, q) + q_prev
    return RationalInterval._trusted(coprime_fraction(q, q_next + q), coprime_fraction(q, q_next))


def theta_bounds(cf: CFExpansion, n: int) -> RationalInterval:
    """Exact enclosure of theta_n = q_n^2 |x - p_n/q_n|.

    Valid for every x whose expansion starts with the given quotients;
    requires a_{n+1} to be known.  theta_0 uses q_{-1}/q_0 = 0.
    """
    q_prev, q, a_next = _denominators_at(cf, n)
    return theta_interval(q_prev, q, a_next)


def error_interval(q_prev: int, q: int, a_next: int) -> RationalInterval:
    """Enclosure of |x - p_n/q_n| from the recurrence state at index n.

    Equal to theta_interval scaled by 1/q_n^2; the endpoints collapse to
    the classical unit fractions 1/(q_n (q_{n+1} + q_n)) and 1/(q_n q_{n+1}).
    """
    q_next = big_mul(a_next, q) + q_prev
    return RationalInterval._trusted(
        coprime_fraction(1, big_mul(q, q_next + q)), coprime_fraction(1, big_mul(q, q_next))
    )


def error_bounds(cf: CFExpansion, n: int) -> RationalInterval:
    """Exact enclosure of |x - p_n/q_n|: theta_bounds scaled by 1/q_n^2."""
    q_prev, q, a_next = _denominators_at(cf, n)
    return error_interval(q_prev, q, a_next)


@dataclass(frozen=True)
class ForcedConvergentCheck:
    """Outcome of the Legendre test for a candidate fraction."""

    legendre_holds: bool
    is_convergent: bool


def is_forced_convergent(x: Fraction, num: int, den: int) -> ForcedConvergentCheck:
    """Test |x - num/den| < 1/(2 den^2) and membership among x's convergents.

    Whenever the Legendre inequality holds the candidate must be a
    convergent; a violation would be a bug and raises InvariantError.
    """
    x = Fraction(x)
    if den <= 0 or math.gcd(num, den) != 1:
        raise DomainError(f"{num}/{den} must be in lowest terms with den > 0")
    candidate = Fraction(num, den)
    if not 0 < candidate < 1:
        raise DomainError(f"candidate {num}/{den} must lie in (0, 1)")
    if not 0 < x < 1:
        raise DomainError(f"x = {x} must lie in (0, 1)")
    legendre = abs(x - candidate) * (2 * den * den) < 1
    cf = expand_rational(x.numerator, x.denominator)
    member = any(c.p == num and c.q == den for c in convergents(cf))
    if legendre and not member:
        raise InvariantError(
            f"Legendre criterion held for {num}/{den} at x={x} but it is not a convergent"
        )
    return ForcedConvergentCheck(legendre, member)


def cylinder_interval(quotients: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Open interval of all reals whose expansion starts with `quotients`.

    Returned as (lo, hi); the endpoints are p_n/q_n and
    (p_n + p_{n-1})/(q_n + q_{n-1}) in parity-dependent order.
    """
    if not quotients:
        return Fraction(0), Fraction(1)
    rec = ConvergentRecurrence()
    for a in quotients:
        rec.push(a)
    end_a = Fraction(rec.p, rec.q)
    end_b = Fraction(rec.p + rec.p_prev, rec.q + rec.q_prev)
    return (end_a, end_b) if end_a <= end_b else (end_b, end_a)
