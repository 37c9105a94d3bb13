"""Big-integer helpers: digit counts, serialization, log enclosures, roots."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfgrowth.numutil import (
    big_mul,
    ceil_power,
    coprime_fraction,
    decimal_str,
    derived_seed,
    digits10,
    div_bounds,
    log_fraction_bounds,
    log_int_bounds,
    sci_string,
)


@pytest.mark.parametrize("n, d", [(1, 1), (9, 1), (10, 2), (999, 3), (1000, 4), (10**60, 61), (10**60 - 1, 60)])
def test_digits10_boundaries(n, d):
    assert digits10(n) == d


@given(st.integers(1, 10**40))
@settings(max_examples=100, deadline=None)
def test_digits10_matches_str(n):
    assert digits10(n) == len(str(n))


def test_decimal_str_round_trips_huge():
    import gmpy2

    n = 7**23456  # ~19800 digits, beyond the default int-to-str guard
    s = decimal_str(n)
    assert gmpy2.mpz(s) == n  # int(s) would trip the str-to-int digit guard
    assert len(s) == digits10(n)
    assert decimal_str(-12345) == "-12345"


def test_sci_string_values():
    assert sci_string(Fraction(7, 17), 6) == "4.11765e-1"
    assert sci_string(Fraction(1, 14), 12) == "7.14285714286e-2"
    assert sci_string(Fraction(0)) == "0"
    assert sci_string(Fraction(-3, 2), 3) == "-1.50e+0"
    huge = sci_string(Fraction(1, 10**50000), 6)
    assert huge == "1.00000e-50000"


@given(st.integers(2, 10**30))
@settings(max_examples=100, deadline=None)
def test_log_bounds_enclose_true_log(n):
    lo, hi = log_int_bounds(n)
    true = mpmath.log(n)  # independent high-precision oracle
    assert lo <= true <= hi
    assert (hi - lo) <= 3e-12 * float(true)


def test_log_bounds_huge_integer():
    n = 7**1000000
    lo, hi = log_int_bounds(n)
    with mpmath.workdps(40):
        true = mpmath.log(n)
        assert lo <= true <= hi


def test_log_fraction_bounds():
    lo, hi = log_fraction_bounds(Fraction(1, 8))
    true = mpmath.log(mpmath.mpf(1) / 8)
    assert lo <= true <= hi
    with pytest.raises(ValueError):
        log_fraction_bounds(Fraction(0))


def test_div_bounds_outward():
    lo, hi = div_bounds((1.0, 1.0), (3.0, 3.0))
    assert lo <= 1 / 3 <= hi and lo < hi
    with pytest.raises(ValueError):
        div_bounds((1.0, 2.0), (0.0, 1.0))


@pytest.mark.parametrize(
    "base, exp, expected",
    [
        (5, Fraction(0), 1),
        (5, Fraction(2), 25),
        (2, Fraction(1, 2), 2),  # ceil(sqrt 2)
        (17, Fraction(1, 2), 5),
        (9, Fraction(1, 2), 3),  # exact root stays exact
        (10, Fraction(3, 2), 32),  # ceil(31.62...)
    ],
)
def test_ceil_power(base, exp, expected):
    assert ceil_power(base, exp) == expected


@given(st.integers(2, 10**6), st.integers(1, 5), st.integers(1, 4))
@settings(max_examples=100, deadline=None)
def test_ceil_power_definition(base, num, den):
    value = ceil_power(base, Fraction(num, den))
    assert (value - 1) ** den < base**num <= value**den


def test_big_mul_agrees_with_native():
    a, b = 7**4000, 3**5000
    assert big_mul(a, b) == a * b
    assert big_mul(12, 13) == 156


def test_coprime_fraction_behaves_like_fraction():
    f = coprime_fraction(7, 17)
    assert f == Fraction(7, 17)
    assert f + Fraction(10, 17) == 1


def test_derived_seed_stable_and_sensitive():
    assert derived_seed(7, 0, 0) == derived_seed(7, 0, 0)
    assert derived_seed(7, 0, 0) != derived_seed(7, 0, 1)
    assert derived_seed(7, 0, 0) != derived_seed(7, 1, 0)
    assert 0 <= derived_seed("x") < 2**63
