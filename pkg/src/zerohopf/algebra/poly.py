"""Exact multivariate Laurent polynomials over the rationals.

A :class:`MultiPoly` stores its terms as a map from exponent tuples to
:class:`fractions.Fraction` coefficients.  The exponent tuples are aligned with
``symbols``, which is always sorted by :func:`symbol_key`, so two polynomials
built along different routes compare equal whenever they denote the same
element of the ring.  Negative exponents are only admitted for symbols listed
in ``laurent``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Mapping, Tuple, Union

Rational = Fraction
Monomial = Tuple[int, ...]

DEFAULT_LAURENT = frozenset({"b", "R", "beta"})

_NUM_SPLIT = re.compile(r"(\d+)")


class LaurentError(ValueError):
    """A negative exponent was requested for a symbol not flagged laurent."""


def _natural(name: str):
    return tuple(int(t) if t.isdigit() else t for t in _NUM_SPLIT.split(name))


def symbol_key(name: str):
    """Sort key fixing the global indeterminate order.

    Phase variables come first (R, rho, then X3, X4, ...), then raw
    coordinates, the small parameter, pi, and finally parameters in natural
    order.
    """
    if name in ("R", "rho"):
        rank = 0
    elif re.fullmatch(r"X\d+", name):
        rank = 1
    elif re.fullmatch(r"[xuz]\d+", name):
        rank = 2
    elif name == "eps":
        rank = 3
    elif name == "pi":
        rank = 4
    else:
        rank = 5
    return (rank, _natural(name))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MultiPoly:
    __slots__ = ("symbols", "terms", "laurent", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None,
                 symbols: Iterable[str] = (), laurent: Iterable[str] = DEFAULT_LAURENT,
                 _trusted: bool = False):
        symbols = tuple(symbols)
        if _trusted:
            self.symbols = symbols
            self.terms = terms
        else:
            order = sorted(range(len(symbols)), key=lambda i: symbol_key(symbols[i]))
            if len(set(symbols)) != len(symbols):
                raise ValueError(f"repeated symbol in {symbols}")
            self.symbols = tuple(symbols[i] for i in order)
            clean: Dict[Monomial, Fraction] = {}
            for mono, c in (terms or {}).items():
                if len(mono) != len(symbols):
                    raise ValueError("exponent vector length does not match symbols")
                c = _as_fraction(c)
                if c:
                    key = tuple(mono[i] for i in order)
                    clean[key] = clean.get(key, 0) + c
                    if not clean[key]:
                        del clean[key]
            self.terms = clean
        self.laurent = frozenset(laurent)
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, laurent=DEFAULT_LAURENT) -> "MultiPoly":
        c = _as_fraction(c)
        return cls({(): c} if c else {}, (), laurent, _trusted=True)

    @classmethod
    def var(cls, name: str, power: int = 1, laurent=DEFAULT_LAURENT) -> "MultiPoly":
        if power < 0 and name not in laurent:
            raise LaurentError(f"negative power of non-laurent symbol {name!r}")
        if power == 0:
            return cls.const(1, laurent)
        return cls({(power,): Fraction(1)}, (name,), laurent, _trusted=True)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1, laurent=DEFAULT_LAURENT) -> "MultiPoly":
        names = sorted((s for s, e in exps.items() if e), key=symbol_key)
        for s in names:
            if exps[s] < 0 and s not in laurent:
                raise LaurentError(f"negative power of non-laurent symbol {s!r}")
        coeff = _as_fraction(coeff)
        if not coeff:
            return cls.const(0, laurent)
        return cls({tuple(exps[s] for s in names): coeff}, names, laurent, _trusted=True)

    @classmethod
    def coerce(cls, x, laurent=DEFAULT_LAURENT) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return cls.const(x, laurent)

    # -- structure ------------------------------------------------------------
    def _with(self, terms, symbols, laurent=None) -> "MultiPoly":
        return MultiPoly(terms, symbols, self.laurent if laurent is None else laurent, _trusted=True)

    def trimmed(self) -> "MultiPoly":
        used = [i for i in range(len(self.symbols)) if any(m[i] for m in self.terms)]
        if len(used) == len(self.symbols):
            return self
        syms = tuple(self.symbols[i] for i in used)
        return self._with({tuple(m[i] for i in used): c for m, c in self.terms.items()}, syms)

    def aligned(self, symbols: Tuple[str, ...]) -> Dict[Monomial, Fraction]:
        """Terms re-expressed over ``symbols`` (a sorted superset of ours)."""
        if symbols == self.symbols:
            return self.terms
        pos = [symbols.index(s) for s in self.symbols]
        n = len(symbols)
        out = {}
        for m, c in self.terms.items():
            v = [0] * n
            for p, e in zip(pos, m):
                v[p] = e
            out[tuple(v)] = c
        return out

    @staticmethod
    def union_symbols(*polys: "MultiPoly") -> Tuple[str, ...]:
        first = polys[0].symbols
        if all(p.symbols == first for p in polys):
            return first
        return tuple(sorted(set().union(*(p.symbols for p in polys)), key=symbol_key))

    @property
    def free_symbols(self) -> frozenset:
        return frozenset(self.trimmed().symbols)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.symbols), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_exponents(self) -> Dict[str, int]:
        if not self.is_monomial():
            raise ValueError(f"not a monomial: {self}")
        (m,) = self.terms
        return {s: e for s, e in zip(self.symbols, m) if e}

    def leading_coefficient(self) -> Fraction:
        return self.terms[max(self.terms, key=self._grlex_key)]

    def _grlex_key(self, m):
        return (sum(m), m)

    def exponents_of(self, sym: str) -> set:
        if sym not in self.symbols:
            return {0} if self.terms else set()
        i = self.symbols.index(sym)
        return {m[i] for m in self.terms}

    def degree(self, sym: str | None = None) -> int:
        if not self.terms:
            return -1
        if sym is None:
            return max(sum(m) for m in self.terms)
        return max(self.exponents_of(sym))

    def min_degree(self, sym: str) -> int:
        return min(self.exponents_of(sym)) if self.terms else 0

    # -- arithmetic -----------------------------------------------------------
    def __neg__(self):
        return self._with({m: -c for m, c in self.terms.items()}, self.symbols)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other, self.laurent)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other if other.laurent <= self.laurent else other._with(other.terms, other.symbols, self.laurent | other.laurent)
        syms = MultiPoly.union_symbols(self, other)
        out = dict(self.aligned(syms))
        for m, c in other.aligned(syms).items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return self._with(out, syms, self.laurent | other.laurent)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other, self.laurent)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = _as_fraction(c)
        if not c:
            return self._with({}, ())
        return self._with({m: v * c for m, v in self.terms.items()}, self.symbols)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if not self.terms or not other.terms:
            return self._with({}, (), self.laurent | other.laurent)
        syms = MultiPoly.union_symbols(self, other)
        a = self.aligned(syms)
        b = other.aligned(syms)
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        out = {m: c for m, c in out.items() if c}
        return self._with(out, syms, self.laurent | other.laurent)

    __rmul__ = __mul__

    def inverse_monomial(self) -> "MultiPoly":
        """Inverse of a single-term polynomial."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"cannot invert non-monomial {self}")
        ((m, c),) = self.terms.items()
        for s, e in zip(self.symbols, m):
            if e > 0 and s not in self.laurent:
                raise LaurentError(f"inverting creates a negative power of non-laurent symbol {s!r}")
        return self._with({tuple(-e for e in m): 1 / c}, self.symbols)

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_constant():
                if not other.terms:
                    raise ZeroDivisionError("division by zero polynomial")
                return self.scale(1 / other.constant_value())
            return self * other.inverse_monomial()
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse_monomial() ** (-n)
        result = MultiPoly.const(1, self.laurent)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.symbols == b.symbols and a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trimmed()
            self._hash = hash((t.symbols, frozenset(t.terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------
    def diff(self, sym: str) -> "MultiPoly":
        if sym not in self.symbols:
            return self._with({}, ())
        i = self.symbols.index(sym)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                v = list(m)
                v[i] = e - 1
                out[tuple(v)] = c * e
        return self._with(out, self.symbols)

    def subs(self, bindings: Mapping[str, object]) -> "MultiPoly":
        """Substitute rationals or polynomials for symbols, simultaneously."""
        active = {s: MultiPoly.coerce(v, self.laurent) for s, v in bindings.items() if s in self.symbols}
        if not active:
            return self
        idx = [self.symbols.index(s) for s in active]
        keep = [i for i in range(len(self.symbols)) if self.symbols[i] not in active]
        keep_syms = tuple(self.symbols[i] for i in keep)
        powers: Dict[Tuple[str, int], MultiPoly] = {}

        def power(s, e):
            key = (s, e)
            if key not in powers:
                v = active[s]
                if e < 0 and not v.is_monomial():
                    if v.is_zero():
                        raise ZeroDivisionError(f"substituting 0 for {s} with negative exponent")
                    raise ValueError(f"cannot substitute non-monomial into negative power of {s}")
                if e < 0 and v.is_zero():
                    raise ZeroDivisionError(f"substituting 0 for {s} with negative exponent")
                powers[key] = v ** e
            return powers[key]

        groups: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            sub_key = tuple(m[i] for i in idx)
            groups.setdefault(sub_key, {})[tuple(m[i] for i in keep)] = c
        result = self._with({}, ())
        for sub_key, rest in groups.items():
            factor = MultiPoly.const(1, self.laurent)
            for s, e in zip(active, sub_key):
                if e:
                    factor = factor * power(s, e)
            if factor.is_zero():
                continue
            result = result + self._with(rest, keep_syms) * factor
        return result

    def evaluate(self, values: Mapping[str, object]):
        """Numeric value; ``values`` must bind every free symbol."""
        total = 0
        for m, c in self.terms.items():
            t = c
            for s, e in zip(self.symbols, m):
                if e:
                    t = t * values[s] ** e
            total = total + t
        return total

    def coefficients_in(self, sym: str) -> Dict[int, "MultiPoly"]:
        """Map exponent of ``sym`` to the cofactor polynomial."""
        if sym not in self.symbols:
            return {0: self} if self.terms else {}
        i = self.symbols.index(sym)
        rest_syms = self.symbols[:i] + self.symbols[i + 1:]
        groups: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            groups.setdefault(m[i], {})[m[:i] + m[i + 1:]] = c
        return {e: self._with(t, rest_syms) for e, t in groups.items()}

    def to_univariate(self, sym: str) -> list:
        """Dense ascending coefficient list; every other symbol must be absent."""
        t = self.trimmed()
        if not t.terms:
            return []
        if t.symbols not in ((), (sym,)):
            raise ValueError(f"not univariate in {sym}: {self}")
        if t.symbols and min(m[0] for m in t.terms) < 0:
            raise ValueError("negative exponent in univariate conversion")
        deg = max(m[0] for m in t.terms) if t.symbols else 0
        out = [Fraction(0)] * (deg + 1)
        for m, c in t.terms.items():
            out[m[0] if m else 0] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs, sym: str, laurent=DEFAULT_LAURENT) -> "MultiPoly":
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, (sym,), laurent)

    def monomial_content(self, syms: Iterable[str] | None = None) -> Dict[str, int]:
        """Largest monomial (in ``syms``) dividing every term, allowing negatives."""
        if not self.terms:
            return {}
        syms = self.symbols if syms is None else [s for s in syms if s in self.symbols]
        out = {}
        for s in syms:
            e = self.min_degree(s)
            if e:
                out[s] = e
        return out

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        from math import gcd
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def clear_monomial(self, exps: Mapping[str, int]) -> "MultiPoly":
        """Divide by the monomial with exponents ``exps`` (no laurent check)."""
        if not exps:
            return self
        syms = MultiPoly.union_symbols(self, MultiPoly(None, tuple(exps), self.laurent))
        shift = [exps.get(s, 0) for s in syms]
        return self._with({tuple(e - d for e, d in zip(m, shift)): c
                           for m, c in self.aligned(syms).items()}, syms)

    def with_laurent(self, laurent: Iterable[str]) -> "MultiPoly":
        return self._with(self.terms, self.symbols, frozenset(laurent))

    # -- printing ---------------------------------------------------------------
    def sorted_terms(self):
        """Terms in descending graded-lex order over the canonical symbol order."""
        t = self.trimmed()
        keyed = sorted(t.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)
        return t.symbols, keyed

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"


def format_poly(p: MultiPoly) -> str:
    """Canonical text: descending grlex, ``^`` powers, explicit ``*``."""
    syms, keyed = p.sorted_terms()
    if not keyed:
        return "0"
    parts = []
    for i, (m, c) in enumerate(keyed):
        factors = []
        for s, e in zip(syms, m):
            if e == 1:
                factors.append(s)
            elif e:
                factors.append(f"{s}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


PolyLike = Union[MultiPoly, Fraction, int]
