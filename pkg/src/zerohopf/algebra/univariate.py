"""Dense univariate polynomials over Q and exact real root isolation.

Polynomials are plain lists of :class:`~fractions.Fraction`, lowest degree
first.  Isolation runs Descartes' rule of signs with bisection on the
squarefree factors; multiplicities come from Yun's squarefree decomposition.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

UPoly = List[Fraction]


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p, q) -> UPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q) -> UPoly:
    return add(p, [-c for c in q])


def mul(p, q) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def derivative(p) -> UPoly:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(p, q) -> Tuple[UPoly, UPoly]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lc = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        c = r[-1] / lc
        k = len(r) - 1 - dq
        quot[k] = c
        for i in range(dq + 1):
            r[k + i] -= c * q[i]
        r = trim(r)
    return trim(quot), r


def monic(p) -> UPoly:
    p = trim(p)
    if not p:
        return p
    lc = p[-1]
    return [c / lc for c in p]


def gcd(p, q) -> UPoly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def exact_quotient(p, q) -> UPoly:
    quot, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("division is not exact")
    return quot


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def squarefree_decomposition(p) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: monic factors f_i with p = lc * prod f_i^i."""
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial has no squarefree decomposition")
    if len(p) == 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_quotient(p, a)
    c = exact_quotient(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out.append((monic(a), i))
        b = exact_quotient(b, a)
        c = exact_quotient(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def squarefree_part(p) -> UPoly:
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    return monic(exact_quotient(p, gcd(p, derivative(p))))


def sign_variations(coeffs) -> int:
    signs = [c > 0 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def taylor_shift(p, a) -> UPoly:
    """Coefficients of p(x + a)."""
    p = list(p)
    n = len(p)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            p[k] += a * p[k + 1]
    return p


def scale_arg(p, s) -> UPoly:
    """Coefficients of p(s*x)."""
    out = []
    f = Fraction(1)
    for c in p:
        out.append(c * f)
        f *= s
    return out


def cauchy_bound(p) -> Fraction:
    """Power of two strictly exceeding every root modulus."""
    p = trim(p)
    lc = abs(p[-1])
    m = max((abs(c) / lc for c in p[:-1]), default=Fraction(0))
    bound = 1 + m
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval for one distinct real root.

    ``lo == hi`` means the root is exactly that rational.  Otherwise the root
    lies in the open interval ``(lo, hi)`` and the squarefree factor changes
    sign across it.
    """
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint())


def _isolate_squarefree(p: UPoly, lo: Fraction, hi: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """Isolate roots of squarefree p inside the open interval (lo, hi)."""
    out = []
    # q(x) = p(lo + (hi - lo) x) on (0, 1)
    stack = [(lo, hi, scale_arg(taylor_shift(p, lo), hi - lo))]
    while stack:
        a, b, q = stack.pop()
        # variations of (x+1)^d q(1/(x+1))
        v = sign_variations(taylor_shift(list(reversed(q)), 1))
        if v == 0:
            continue
        if v == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if evaluate(p, m) == 0:
            out.append((m, m))
        left = scale_arg(q, Fraction(1, 2))
        right = taylor_shift(left, 1)
        stack.append((a, m, left))
        stack.append((m, b, right))
    return out


def isolate_squarefree(p, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None):
    """Sorted isolating intervals of the real roots of squarefree p in [lo, hi]."""
    p = trim(p)
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if len(p) == 1:
        return []
    b = cauchy_bound(p)
    lo = -b if lo is None else Fraction(lo)
    hi = b if hi is None else Fraction(hi)
    found = []
    for end in (lo, hi):
        if evaluate(p, end) == 0:
            found.append((end, end))
    if lo < hi:
        found.extend(_isolate_squarefree(p, lo, hi))
    found = sorted(set(found))
    return found


def isolate_real_roots(p, lo=None, hi=None) -> List[RootInterval]:
    """Isolate every distinct real root of ``p`` with its multiplicity.

    Intervals are pairwise disjoint and sorted.  ``lo``/``hi`` restrict the
    search to the closed interval [lo, hi].
    """
    p = trim(p)
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    pieces = []
    for f, mult in squarefree_decomposition(p):
        for a, b in isolate_squarefree(f, lo, hi):
            pieces.append([a, b, mult, f])
    # factors are coprime, so overlapping intervals hold distinct roots
    changed = True
    while changed:
        changed = False
        pieces.sort(key=lambda t: (t[0], t[1]))
        for i in range(len(pieces) - 1):
            x, y = pieces[i], pieces[i + 1]
            if _overlap(x[0], x[1], y[0], y[1]):
                for piece in (x, y):
                    if piece[0] != piece[1]:
                        piece[0], piece[1] = refine(piece[3], piece[0], piece[1])
                changed = True
                break
    return [RootInterval(a, b, m) for a, b, m, _ in sorted(pieces, key=lambda t: (t[0], t[1]))]


def _overlap(a, b, c, d) -> bool:
    if a == b and c == d:
        return a == c
    if a == b:
        return c < a < d
    if c == d:
        return a < c < b
    return a < d and c < b


def _sign_right_of(p, x) -> int:
    # p squarefree: if p(x) = 0 the sign just right of x is that of p'(x)
    s = sign(evaluate(p, x))
    return s if s else sign(evaluate(derivative(p), x))


def refine(p, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """One bisection step of an isolating interval of squarefree p."""
    if lo == hi:
        return lo, hi
    m = (lo + hi) / 2
    sm = sign(evaluate(p, m))
    if sm == 0:
        return m, m
    if sm == _sign_right_of(p, lo):
        return m, hi
    return lo, m


def refine_to_width(p, interval: RootInterval, width) -> RootInterval:
    """Shrink an isolating interval of a root of ``p`` below ``width``."""
    f = squarefree_part(p)
    lo, hi = interval.lo, interval.hi
    while hi - lo >= width and lo != hi:
        lo, hi = refine(f, lo, hi)
    return RootInterval(lo, hi, interval.multiplicity)


def binomial_expand_power(a, n):
    """Coefficients of (x + a)^n."""
    return [Fraction(comb(n, i)) * Fraction(a) ** (n - i) for i in range(n + 1)]
