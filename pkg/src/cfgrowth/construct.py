"""Constructors for expansions with a prescribed growth statistic.

The every-step scheme starts from a_1 = 2 and chooses a_{n+1} =
max(1, ceil(q_n^t)) with t = 2z/(1-z).  Then |x - p_n/q_n| is within
constant factors of q_n^{-(t+2)}, so R_n converges to t/(t+2) = z and
S_n to z - 1; the deviation at index n is O(1/log q_n) and in practice
far smaller.  A multiplicative jitter factor drawn uniformly from
[1, jitter] perturbs log a_{n+1} by at most log 2, which vanishes
against log q_n, so jittered runs converge to the same limit while
producing distinct points for sampling.

The sparse scheme applies the target step only at indices n = 2^k and
uses a_{n+1} = 1 elsewhere, realizing limsup R_n = z with liminf 0.

The value z = 1 needs quotients that outrun every power of q_n; the
extreme-growth constructor uses a_{n+1} = q_n^{3n} + 1.  Any schedule
with a_{n+1} > q_n^{2n} drives R_n to 1; the factor 3 makes
R_n ~ 3n/(3n+2), which clears 0.9 by the eighth quotient.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .cfcore import CFExpansion, ConvergentRecurrence
from .errors import BudgetError, DomainError
from .numutil import big_mul, ceil_power, digits10

EVERY_STEP = "every-step"
SPARSE = "sparse"

_EXTREME_EXPONENT_FACTOR = 3  # per-index exponent 3n; must stay > 2n


@dataclass(frozen=True)
class ConstructionPlan:
    """Parameters of a growth-target construction.

    z        target limit of R_n, a rational in [0, 1]
    mode     "every-step" (limit = z) or "sparse" (limsup = z, liminf = 0)
    jitter   upper end of the uniform multiplicative factor in [1, 2];
             1.0 disables randomization
    seed     RNG seed used only when jitter > 1
    max_digits  stop before the next denominator would exceed this many
                decimal digits
    """

    z: Fraction
    mode: str = EVERY_STEP
    jitter: float = 1.0
    seed: int = 0
    max_digits: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", Fraction(self.z))
        if not 0 <= self.z <= 1:
            raise DomainError(f"target z must lie in [0, 1], got {self.z}")
        if self.mode not in (EVERY_STEP, SPARSE):
            raise DomainError(f"mode must be '{EVERY_STEP}' or '{SPARSE}', got {self.mode!r}")
        if not 1.0 <= self.jitter <= 2.0:
            raise DomainError(f"jitter factor must lie in [1, 2], got {self.jitter}")
        if self.max_digits < 10:
            raise DomainError(f"max_digits must be >= 10, got {self.max_digits}")

    @property
    def t(self) -> Fraction | None:
        """Quotient growth exponent; None at the z = 1 boundary."""
        return None if self.z == 1 else growth_exponent(self.z)


def growth_exponent(z: Fraction) -> Fraction:
    """Exponent t = 2z/(1-z) making a_{n+1} ~ q_n^t realize R_n -> z."""
    z = Fraction(z)
    if z == 1:
        raise DomainError("z = 1 has no finite exponent; use construct_r_extreme")
    if not 0 <= z < 1:
        raise DomainError(f"z must lie in [0, 1), got {z}")
    return 2 * z / (1 - z)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def construct_r_target(plan: ConstructionPlan) -> CFExpansion:
    """Expansion whose R_n intervals converge to plan.z (see module docs).

    Deterministic for a fixed plan; generation stops when the next
    denominator would exceed plan.max_digits decimal digits.
    """
    if plan.z == 1:
        raise DomainError("z = 1 is handled by construct_r_extreme")
    t = growth_exponent(plan.z)
    rng = random.Random(plan.seed)
    rec = ConvergentRecurrence()
    quotients = [2]
    rec.push(2)
    while True:
        n = len(quotients)  # current index: rec.q == q_n
        if plan.mode == SPARSE and not _is_power_of_two(n):
            a = 1
        else:
            a = ceil_power(rec.q, t)
            if plan.jitter > 1.0:
                a = math.ceil(a * Fraction(rng.uniform(1.0, plan.jitter)))
            a = max(1, a)
        q_next = big_mul(a, rec.q) + rec.q_prev
        if digits10(q_next) > plan.max_digits:
            break
        quotients.append(a)
        rec.push(a)
    if len(quotients) < 3:
        raise BudgetError(
            f"max_digits={plan.max_digits} leaves room for only {len(quotients)} quotients (need >= 3)"
        )
    return CFExpansion(tuple(quotients))


def construct_r_extreme(steps: int | None = None, max_digits: int | None = None) -> CFExpansion:
    """Expansion with R_n increasing to 1, via a_{n+1} = q_n^{3n} + 1.

    Give `steps` for a fixed quotient count (raises BudgetError if
    max_digits is also set and runs out first), or only `max_digits` to
    fill a digit budget.
    """
    if steps is None and max_digits is None:
        raise DomainError("need steps or max_digits")
    if steps is not None and steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    rec = ConvergentRecurrence()
    quotients = [1]
    rec.push(1)
    while steps is None or len(quotients) < steps:
        n = len(quotients)
        a = int(gmpy2.mpz(rec.q) ** (_EXTREME_EXPONENT_FACTOR * n)) + 1
        if max_digits is not None and digits10(big_mul(a, rec.q) + rec.q_prev) > max_digits:
            if steps is not None:
                raise BudgetError(
                    f"digit budget {max_digits} exhausted after {len(quotients)} of {steps} quotients"
                )
            break
        quotients.append(a)
        rec.push(a)
    if len(quotients) < 2:
        raise BudgetError(f"digit budget {max_digits} too small for two quotients")
    return CFExpansion(tuple(quotients))


def construct_s_target(
    alpha: Fraction,
    mode: str = EVERY_STEP,
    jitter: float = 1.0,
    seed: int = 0,
    max_digits: int = 1000,
    steps: int | None = None,
) -> CFExpansion:
    """Expansion whose S_n intervals converge to alpha in [-1, 0].

    S_n -> alpha is equivalent to R_n -> alpha + 1, so this delegates to
    the R-target constructors; alpha = 0 maps to the extreme-growth family.
    """
    alpha = Fraction(alpha)
    if not -1 <= alpha <= 0:
        raise DomainError(f"alpha must lie in [-1, 0], got {alpha}")
    if alpha == 0:
        return construct_r_extreme(steps=steps, max_digits=max_digits)
    plan = ConstructionPlan(z=alpha + 1, mode=mode, jitter=jitter, seed=seed, max_digits=max_digits)
    return construct_r_target(plan)
