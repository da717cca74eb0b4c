"""Interval arithmetic with exact rational endpoints.

Used for certified embeddings and sign decisions; every decision made on an
interval is either exact (the interval excludes 0) or deferred by refining.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction


def precision_width(default_bits: int) -> Fraction:
    """Seed width 2**-bits for interval refinement loops.

    The KLEIN_PRECISION environment variable (a bit count) overrides the
    default.  All decisions taken on intervals remain exact: a coarser seed
    only means more refinement rounds, never a different answer.
    """
    bits = default_bits
    env = os.environ.get("KLEIN_PRECISION")
    if env:
        bits = max(8, int(env))
    return Fraction(1, 2**bits)


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        other = _coerce(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains_zero():
            raise ZeroDivisionError("interval denominator contains zero")
        cands = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return RatInterval(min(cands), max(cands))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def contains(self, x):
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def sign(self):
        """+1, -1 or None if the sign is not decided by this interval."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def abs(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _coerce(x):
    if isinstance(x, RatInterval):
        return x
    return RatInterval(Fraction(x))


def interval_poly_eval(coeffs, x: RatInterval) -> RatInterval:
    """Horner evaluation of a polynomial (constant term first) on an interval."""
    acc = RatInterval(Fraction(0))
    for c in reversed(list(coeffs)):
        acc = acc * x + Fraction(c)
    return acc


def interval_det3(m):
    """Determinant of a 3x3 matrix of intervals."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
