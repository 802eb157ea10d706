"""Closed intervals with exact rational or outward-rounded float endpoints."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .poly import MultiPoly


def _down(x):
    return math.nextafter(x, -math.inf) if isinstance(x, float) else x


def _up(x):
    return math.nextafter(x, math.inf) if isinstance(x, float) else x


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def coerce(cls, x, floating=False):
        if isinstance(x, Interval):
            return x
        if floating:
            f = float(x)
            if Fraction(f) == Fraction(x):
                return cls(f, f)
            return cls(_down(f), _up(f))
        return cls(Fraction(x))

    def __add__(self, other):
        other = Interval.coerce(other, isinstance(self.lo, float))
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = Interval.coerce(other, isinstance(self.lo, float))
        return Interval(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __rsub__(self, other):
        return Interval.coerce(other, isinstance(self.lo, float)) - self

    def __mul__(self, other):
        other = Interval.coerce(other, isinstance(self.lo, float))
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n == 0:
            return Interval.coerce(1, isinstance(self.lo, float))
        if n < 0:
            return self.reciprocal() ** (-n)
        a, b = self.lo ** n, self.hi ** n
        if n % 2 == 1:
            return Interval(_down(a), _up(b))
        if self.lo >= 0:
            return Interval(_down(a), _up(b))
        if self.hi <= 0:
            return Interval(_down(b), _up(a))
        return Interval(0 * a, _up(max(a, b)))

    def reciprocal(self):
        if self.contains(0):
            raise ZeroDivisionError("reciprocal of an interval containing 0")
        one = 1.0 if isinstance(self.lo, float) else Fraction(1)
        return Interval(_down(one / self.hi), _up(one / self.lo))

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1 / -1 if the sign is constant, 0 if undecided."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def subset_interior(self, other: "Interval") -> bool:
        return other.lo < self.lo and self.hi < other.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def midpoint(self):
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def eval_poly(p: MultiPoly, box: Mapping[str, Interval], floating: bool = False) -> Interval:
    """Natural interval extension of ``p`` over ``box``.

    Symbols of ``p`` missing from ``box`` must not occur.  Powers are
    evaluated with tight even-power enclosures.
    """
    t = p.trimmed()
    syms = t.symbols
    missing = [s for s in syms if s not in box]
    if missing:
        raise KeyError(f"unbound symbols {missing}")
    powers = {}
    total = Interval.coerce(0, floating)
    for m, c in t.terms.items():
        term = Interval.coerce(c, floating)
        for s, e in zip(syms, m):
            if e:
                key = (s, e)
                if key not in powers:
                    powers[key] = box[s] ** e
                term = term * powers[key]
        total = total + term
    return total
