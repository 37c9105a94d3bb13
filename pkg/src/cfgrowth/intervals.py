"""Exact closed intervals with rational endpoints.

Used as certified enclosures for quantities that are irrational or only
known up to a continued-fraction tail: approximation errors, normalized
errors, and log-ratio statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    def __contains__(self, value: object) -> bool:
        return self.lo <= value <= self.hi  # type: ignore[operator]

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def mid_float(self) -> float:
        return float(self.midpoint)

    def scale(self, factor: Fraction) -> "RationalInterval":
        """Multiply both endpoints by a positive exact factor."""
        factor = Fraction(factor)
        if factor <= 0:
            raise DomainError("scale factor must be positive")
        return RationalInterval(self.lo * factor, self.hi * factor)

    @classmethod
    def from_float_bounds(cls, lo: float, hi: float) -> "RationalInterval":
        """Exact interval from float bounds (floats are exact binary rationals)."""
        return cls(Fraction(lo), Fraction(hi))

    @classmethod
    def _trusted(cls, lo: Fraction, hi: Fraction) -> "RationalInterval":
        """Fast path for callers that already guarantee exact Fractions with
        lo <= hi; skips coercion and the ordering comparison, which cross-
        multiplies and is expensive for million-bit endpoints."""
        interval = object.__new__(cls)
        object.__setattr__(interval, "lo", lo)
        object.__setattr__(interval, "hi", hi)
        return interval

    @classmethod
    def point(cls, value: Fraction) -> "RationalInterval":
        value = Fraction(value)
        return cls(value, value)
