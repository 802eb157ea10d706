"""Quasi-trigonometric polynomials and truncated series in the small parameter.

A :class:`QuasiTrigPoly` is a finite sum ``c * theta^p * h(theta)`` where the
harmonic ``h`` is ``1``, ``cos(j theta)`` or ``sin(j theta)`` and ``c`` is a
:class:`~zerohopf.algebra.MultiPoly`.  Terms are keyed by ``(p, h)`` with
``h = 0`` for the constant harmonic, ``h = j`` for ``cos(j theta)`` and
``h = -j`` for ``sin(j theta)``.  Products are linearised with the
product-to-sum identities, so the representation is canonical.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Sequence, Tuple

from .algebra.poly import MultiPoly

Key = Tuple[int, int]
HALF = Fraction(1, 2)


def _acc(out: Dict[Key, MultiPoly], key: Key, c: MultiPoly):
    if c.is_zero():
        return
    prev = out.get(key)
    if prev is None:
        out[key] = c
    else:
        s = prev + c
        if s.is_zero():
            del out[key]
        else:
            out[key] = s


def _harmonic_product(h1: int, h2: int) -> List[Tuple[int, Fraction]]:
    """Linearise harmonic(h1) * harmonic(h2) into (harmonic, weight) pairs."""
    if h1 == 0:
        return [(h2, Fraction(1))]
    if h2 == 0:
        return [(h1, Fraction(1))]
    a, b = abs(h1), abs(h2)
    out = []

    def cos_(j, w):
        out.append((abs(j), w))

    def sin_(j, w):
        if j > 0:
            out.append((-j, w))
        elif j < 0:
            out.append((j, -w))

    if h1 > 0 and h2 > 0:
        cos_(a - b, HALF)
        cos_(a + b, HALF)
    elif h1 < 0 and h2 < 0:
        cos_(a - b, HALF)
        cos_(a + b, -HALF)
    else:
        s, c = (a, b) if h1 < 0 else (b, a)
        # sin(s) cos(c) = (sin(s + c) + sin(s - c)) / 2
        sin_(s + c, HALF)
        sin_(s - c, HALF)
    return out


class QuasiTrigPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, MultiPoly] | None = None):
        clean: Dict[Key, MultiPoly] = {}
        for (p, h), c in (terms or {}).items():
            if p < 0:
                raise ValueError("theta power must be nonnegative")
            _acc(clean, (p, h), MultiPoly.coerce(c))
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Key, MultiPoly]) -> "QuasiTrigPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c) -> "QuasiTrigPoly":
        return cls({(0, 0): MultiPoly.coerce(c)})

    @classmethod
    def cos(cls, j: int = 1, coeff=1) -> "QuasiTrigPoly":
        return cls({(0, j): MultiPoly.coerce(coeff)}) if j else cls.const(coeff)

    @classmethod
    def sin(cls, j: int = 1, coeff=1) -> "QuasiTrigPoly":
        return cls({(0, -j): MultiPoly.coerce(coeff)}) if j else cls()

    @classmethod
    def theta(cls, p: int = 1, coeff=1) -> "QuasiTrigPoly":
        return cls({(p, 0): MultiPoly.coerce(coeff)})

    @classmethod
    def coerce(cls, x) -> "QuasiTrigPoly":
        return x if isinstance(x, QuasiTrigPoly) else cls.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def theta_degree(self) -> int:
        return max((p for p, _ in self.terms), default=-1)

    def max_harmonic(self) -> int:
        return max((abs(h) for _, h in self.terms), default=0)

    def is_theta_free(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_coeff(self) -> MultiPoly:
        return self.terms.get((0, 0), MultiPoly.const(0))

    # -- arithmetic --------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QuasiTrigPoly):
            other = QuasiTrigPoly.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return QuasiTrigPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QuasiTrigPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-QuasiTrigPoly.coerce(other))

    def __rsub__(self, other):
        return QuasiTrigPoly.coerce(other) - self

    def scale(self, c) -> "QuasiTrigPoly":
        """Multiply every coefficient by a MultiPoly or rational."""
        out = {}
        for k, v in self.terms.items():
            _acc(out, k, v * c)
        return QuasiTrigPoly._raw(out)

    def __mul__(self, other):
        if not isinstance(other, QuasiTrigPoly):
            return self.scale(other)
        return trig_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = QuasiTrigPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, QuasiTrigPoly):
            other = QuasiTrigPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- coefficient maps ------------------------------------------------------
    def map_coeffs(self, fn: Callable[[MultiPoly], MultiPoly]) -> "QuasiTrigPoly":
        out = {}
        for k, c in self.terms.items():
            _acc(out, k, fn(c))
        return QuasiTrigPoly._raw(out)

    def diff(self, sym: str) -> "QuasiTrigPoly":
        """Partial derivative in a coefficient symbol (theta held fixed)."""
        return self.map_coeffs(lambda c: c.diff(sym))

    def subs(self, bindings) -> "QuasiTrigPoly":
        return self.map_coeffs(lambda c: c.subs(bindings))

    def dtheta(self) -> "QuasiTrigPoly":
        out = {}
        for (p, h), c in self.terms.items():
            if p:
                _acc(out, (p - 1, h), c.scale(p))
            if h > 0:
                _acc(out, (p, -h), c.scale(-h))
            elif h < 0:
                _acc(out, (p, -h), c.scale(-h))
        return QuasiTrigPoly._raw(out)

    def evaluate(self, theta: float, values: Mapping[str, object]) -> float:
        total = 0.0
        for (p, h), c in self.terms.items():
            if h > 0:
                harm = math.cos(h * theta)
            elif h < 0:
                harm = math.sin(-h * theta)
            else:
                harm = 1.0
            total += float(c.evaluate(values)) * theta ** p * harm
        return total

    def at_zero(self) -> MultiPoly:
        """Value at theta = 0."""
        out = MultiPoly.const(0)
        for (p, h), c in self.terms.items():
            if p == 0 and h >= 0:
                out = out + c
        return out

    def __str__(self):
        return format_trig(self)

    def __repr__(self):
        return f"QuasiTrigPoly({format_trig(self)!r})"


def _harmonic_text(p: int, h: int) -> str:
    parts = []
    if p == 1:
        parts.append("theta")
    elif p:
        parts.append(f"theta^{p}")
    if h > 0:
        parts.append("cos(theta)" if h == 1 else f"cos({h}*theta)")
    elif h < 0:
        parts.append("sin(theta)" if h == -1 else f"sin({-h}*theta)")
    return "*".join(parts)


def _harmonic_order(key: Key):
    p, h = key
    return (p, abs(h), h < 0)


def format_trig(q: QuasiTrigPoly) -> str:
    if not q.terms:
        return "0"
    parts = []
    for key in sorted(q.terms, key=_harmonic_order):
        c = q.terms[key]
        h = _harmonic_text(*key)
        if not h:
            parts.append(f"({c})")
        else:
            parts.append(f"({c})*{h}")
    return " + ".join(parts)


def trig_mul(a: QuasiTrigPoly, b: QuasiTrigPoly) -> QuasiTrigPoly:
    """Exact product, linearised into the canonical harmonic basis."""
    out: Dict[Key, MultiPoly] = {}
    for (p1, h1), c1 in a.terms.items():
        for (p2, h2), c2 in b.terms.items():
            c = c1 * c2
            if c.is_zero():
                continue
            for h, w in _harmonic_product(h1, h2):
                _acc(out, (p1 + p2, h), c if w == 1 else c.scale(w))
    return QuasiTrigPoly._raw(out)


@lru_cache(maxsize=None)
def _primitive(p: int, h: int) -> Tuple[Tuple[Key, Fraction], ...]:
    """Antiderivative of theta^p * harmonic(h) vanishing at 0, rational weights."""
    if h == 0:
        return (((p + 1, 0), Fraction(1, p + 1)),)
    j = abs(h)
    out: Dict[Key, Fraction] = {}

    def add(key, w):
        out[key] = out.get(key, 0) + w
        if not out[key]:
            del out[key]

    if h > 0:
        # int t^p cos(jt) = t^p sin(jt)/j - (p/j) int t^(p-1) sin(jt)
        add((p, -j), Fraction(1, j))
        if p:
            for key, w in _primitive(p - 1, -j):
                add(key, -Fraction(p, j) * w)
    else:
        # int t^p sin(jt) = -t^p cos(jt)/j + (p/j) int t^(p-1) cos(jt) [+ 1/j if p = 0]
        add((p, j), -Fraction(1, j))
        if p:
            for key, w in _primitive(p - 1, j):
                add(key, Fraction(p, j) * w)
        else:
            add((0, 0), Fraction(1, j))
    return tuple(sorted(out.items()))


def antiderivative(a: QuasiTrigPoly) -> QuasiTrigPoly:
    """G with G(0) = 0 and dG/dtheta = a."""
    out: Dict[Key, MultiPoly] = {}
    for (p, h), c in a.terms.items():
        for key, w in _primitive(p, h):
            _acc(out, key, c.scale(w))
    return QuasiTrigPoly._raw(out)


PI = MultiPoly.var("pi")


def evaluate_at_period(a: QuasiTrigPoly) -> MultiPoly:
    """Value at theta = 2*pi with pi symbolic: cos -> 1, sin -> 0."""
    out = MultiPoly.const(0)
    for (p, h), c in a.terms.items():
        if h < 0:
            continue
        out = out + c * (PI ** p).scale(Fraction(2) ** p)
    return out


def definite_over_period(a: QuasiTrigPoly) -> MultiPoly:
    """Integral of ``a`` over [0, 2*pi], exact with pi kept symbolic."""
    return evaluate_at_period(antiderivative(a))


class EpsSeries:
    """Truncated power series sum_{i=0}^{order} eps^i c_i.

    Coefficients may be QuasiTrigPoly or MultiPoly values; nothing beyond
    ``order`` is ever formed.
    """
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = list(coeffs)[: order + 1]
        zero = _zero_like(coeffs)
        coeffs += [zero] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order: int, like=None) -> "EpsSeries":
        z = QuasiTrigPoly() if like is None else _zero_like([like])
        return cls([z] * (order + 1), order)

    def __getitem__(self, i):
        return self.coeffs[i] if i <= self.order else _zero_like(self.coeffs)

    def _check(self, other: "EpsSeries"):
        if not isinstance(other, EpsSeries):
            raise TypeError("expected an EpsSeries")
        if other.order != self.order:
            raise ValueError(f"truncation order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return EpsSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        return EpsSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return EpsSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, EpsSeries):
            return EpsSeries([a * other for a in self.coeffs], self.order)
        self._check(other)
        out = []
        for n in range(self.order + 1):
            acc = None
            for i in range(n + 1):
                a, b = self.coeffs[i], other.coeffs[n - i]
                if not a or not b:
                    continue
                t = a * b
                acc = t if acc is None else acc + t
            out.append(acc if acc is not None else _zero_like(self.coeffs))
        return EpsSeries(out, self.order)

    def __eq__(self, other):
        return isinstance(other, EpsSeries) and self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def map(self, fn) -> "EpsSeries":
        return EpsSeries([fn(c) for c in self.coeffs], self.order)

    def __repr__(self):
        return "EpsSeries(" + ", ".join(f"eps^{i}: {c}" for i, c in enumerate(self.coeffs) if c) + f"; O(eps^{self.order + 1}))"


def _zero_like(coeffs):
    for c in coeffs:
        if isinstance(c, QuasiTrigPoly):
            return QuasiTrigPoly()
        if isinstance(c, MultiPoly):
            return MultiPoly.const(0)
    return QuasiTrigPoly()


def eps_add(a: EpsSeries, b: EpsSeries) -> EpsSeries:
    return a + b


def eps_mul(a: EpsSeries, b: EpsSeries) -> EpsSeries:
    return a * b


def eps_invert_unit(d: EpsSeries) -> EpsSeries:
    """Inverse of d = m (1 + t) with m a monomial, by the truncated geometric series."""
    lead = d.coeffs[0]
    if isinstance(lead, QuasiTrigPoly):
        if not lead.is_theta_free():
            raise ValueError("leading coefficient must be theta-free")
        lead_poly = lead.constant_coeff()
    else:
        lead_poly = lead
    if lead_poly.is_zero():
        raise ZeroDivisionError("leading coefficient of the series is zero")
    inv = lead_poly.inverse_monomial()
    tail = EpsSeries([_zero_like(d.coeffs)] + [c * inv for c in d.coeffs[1:]], d.order)
    one = QuasiTrigPoly.const(1) if isinstance(lead, QuasiTrigPoly) else MultiPoly.const(1)
    unit = EpsSeries([one], d.order)
    # 1/(1+t) = sum (-t)^i, t = O(eps)
    result = unit
    power = unit
    neg_tail = -tail
    for _ in range(d.order):
        power = power * neg_tail
        result = result + power
    return result * inv
