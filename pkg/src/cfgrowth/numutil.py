"""Big-integer utilities: digit counts, decimal serialization, certified
natural-log enclosures, and integer powers with rational exponents.

Denominators in this package routinely exceed 10^5 decimal digits, where
CPython's base-10 conversion is quadratic; conversions route through gmpy2
instead.  Logarithms of big integers cannot be exact, so every log here is
returned as a two-sided float enclosure with relative slack LOG_REL_SLACK,
orders of magnitude wider than the actual error of math.log yet far below
any tolerance used downstream.
"""

from __future__ import annotations

import hashlib
import math
from fractions import Fraction

import gmpy2

# Relative half-width of every log enclosure.  math.log on a CPython int is
# computed from a 53-bit leading window plus bit_length * log(2) and is
# accurate to a few ulp (~1e-16 relative); 1e-12 leaves a ~10^4 safety factor.
LOG_REL_SLACK = 1e-12

_BIG_STR_BITS = 8192  # above this, int -> decimal string goes through gmpy2

_BIG_MUL_BITS = 1 << 16  # above this combined size, multiply via GMP


def big_mul(x: int, y: int) -> int:
    """x * y, routed through GMP when the operands are large.

    CPython's Karatsuba multiply is ~20x slower than GMP at a few million
    bits, which dominates the extreme-growth constructions.
    """
    if x.bit_length() + y.bit_length() < _BIG_MUL_BITS:
        return x * y
    return int(gmpy2.mpz(x) * gmpy2.mpz(y))


def coprime_fraction(num: int, den: int) -> Fraction:
    """Fraction from an already-reduced pair with den > 0, skipping the gcd.

    The gcd of a coprime million-bit pair costs seconds; callers must
    guarantee gcd(num, den) == 1 and den > 0 or Fraction arithmetic breaks.
    """
    f = Fraction.__new__(Fraction)
    f._numerator = num  # type: ignore[attr-defined]
    f._denominator = den  # type: ignore[attr-defined]
    return f


def digits10(n: int) -> int:
    """Exact number of decimal digits of a positive integer."""
    if n <= 0:
        raise ValueError("digits10 expects a positive integer")
    d = gmpy2.mpz(n).num_digits(10)
    # num_digits may overestimate by one for base 10
    if gmpy2.mpz(10) ** (d - 1) > n:
        d -= 1
    return d


def decimal_str(n: int) -> str:
    """Base-10 string of an integer of any size.

    Bypasses sys.int_max_str_digits and the quadratic int-to-str path.
    """
    if -(1 << _BIG_STR_BITS) < n < (1 << _BIG_STR_BITS):
        return str(n)
    return gmpy2.mpz(n).digits(10)


def sci_string(value: Fraction, sig: int = 12) -> str:
    """Correctly rounded scientific-notation decimal for an exact rational.

    Handles exponents far outside float range (e.g. 1/q with q of 10^5
    digits).  `sig` is the number of significant digits emitted.
    """
    if sig < 1:
        raise ValueError("sig must be >= 1")
    if value == 0:
        return "0"
    with gmpy2.context(precision=int(sig * 3.33) + 24):
        m = gmpy2.mpfr(gmpy2.mpq(value.numerator, value.denominator))
        digits, exp10, _ = m.digits(10, sig)
    sign = ""
    if digits.startswith("-"):
        sign, digits = "-", digits[1:]
    mantissa = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
    return f"{sign}{mantissa}e{exp10 - 1:+d}"


def log_int_bounds(n: int) -> tuple[float, float]:
    """Enclosure of log(n) for a positive integer of any size."""
    if n <= 0:
        raise ValueError("log of a non-positive integer")
    if n == 1:
        return (0.0, 0.0)
    v = math.log(n)
    slack = v * LOG_REL_SLACK
    return (v - slack, v + slack)


def log_fraction_bounds(f: Fraction) -> tuple[float, float]:
    """Enclosure of log(f) for a positive rational of any size."""
    if f <= 0:
        raise ValueError("log of a non-positive rational")
    p_lo, p_hi = log_int_bounds(f.numerator)
    q_lo, q_hi = log_int_bounds(f.denominator)
    return (next_down(p_lo - q_hi), next_up(p_hi - q_lo))


def next_down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def next_up(x: float) -> float:
    return math.nextafter(x, math.inf)


def div_bounds(num: tuple[float, float], den: tuple[float, float]) -> tuple[float, float]:
    """Outward-rounded quotient of two nonnegative/positive float enclosures."""
    n_lo, n_hi = num
    d_lo, d_hi = den
    if d_lo <= 0.0:
        raise ValueError("denominator enclosure must be strictly positive")
    return (next_down(n_lo / d_hi), next_up(n_hi / d_lo))


def ceil_power(base: int, exponent: Fraction) -> int:
    """ceil(base ** exponent) for a positive integer base and exponent >= 0."""
    if base <= 0:
        raise ValueError("base must be positive")
    exponent = Fraction(exponent)
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    if exponent == 0 or base == 1:
        return 1
    num, den = exponent.numerator, exponent.denominator
    powered = gmpy2.mpz(base) ** num
    if den == 1:
        return int(powered)
    root, exact = gmpy2.iroot(powered, den)
    return int(root) if exact else int(root) + 1


def derived_seed(*parts: object) -> int:
    """Stable 63-bit seed derived from arbitrary parts (order-sensitive).

    Independent of PYTHONHASHSEED and platform, so runs keyed by a master
    seed reproduce exactly.
    """
    blob = "\x1f".join(repr(p) for p in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big") >> 1
