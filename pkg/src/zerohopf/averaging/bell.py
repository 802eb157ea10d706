"""Partial Bell polynomials and the symmetric multilinear derivative map."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from ..trig import QuasiTrigPoly


@dataclass(frozen=True)
class BellTerm:
    """coefficient * prod_j x_j^{b_j} with multiplicities (b_1, ..., b_{l-m+1})."""
    multiplicities: Tuple[int, ...]
    coefficient: Fraction

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    @property
    def weight(self) -> int:
        return sum(j * b for j, b in enumerate(self.multiplicities, start=1))

    def factors(self) -> Tuple[int, ...]:
        """Indices j repeated b_j times, e.g. (1, 1, 2) for x1^2 x2."""
        return tuple(j for j, b in enumerate(self.multiplicities, start=1) for _ in range(b))

    def __str__(self):
        mono = "*".join(f"x{j}" + (f"^{b}" if b > 1 else "")
                        for j, b in enumerate(self.multiplicities, start=1) if b)
        return f"{self.coefficient}*{mono}"


def _partitions(total: int, parts: int, max_index: int) -> Iterator[Tuple[int, ...]]:
    """Tuples (b_1..b_max_index) with sum j*b_j = total and sum b_j = parts."""
    def rec(j, rem_total, rem_parts):
        if j == 0:
            if rem_total == 0 and rem_parts == 0:
                yield ()
            return
        for b in range(min(rem_parts, rem_total // j), -1, -1):
            for rest in rec(j - 1, rem_total - j * b, rem_parts - b):
                yield rest + (b,)
    yield from rec(max_index, total, parts)


@lru_cache(maxsize=None)
def partial_bell(l: int, m: int) -> Tuple[BellTerm, ...]:
    """All terms of B_{l,m}(x_1, ..., x_{l-m+1})."""
    if not 1 <= m <= l:
        raise ValueError(f"partial Bell polynomial needs 1 <= m <= l, got l={l}, m={m}")
    size = l - m + 1
    out = []
    for bs in _partitions(l, m, size):
        den = 1
        for j, b in enumerate(bs, start=1):
            den *= factorial(b) * factorial(j) ** b
        out.append(BellTerm(bs, Fraction(factorial(l), den)))
    out.sort(key=lambda t: tuple(-b for b in reversed(t.multiplicities)))
    return tuple(out)


@lru_cache(maxsize=None)
def composition_tuples(l: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    """The tuples (b_1..b_l) with sum j*b_j = l and their weights 1/prod(b_j! j!^b_j)."""
    out = []

    def rec(j, rem, acc):
        if j > l:
            if rem == 0:
                out.append(tuple(acc))
            return
        for b in range(rem // j + 1):
            rec(j + 1, rem - j * b, acc + [b])
    rec(1, l, [])
    res = []
    for bs in out:
        den = 1
        for j, b in enumerate(bs, start=1):
            den *= factorial(b) * factorial(j) ** b
        res.append((bs, Fraction(1, den)))
    return tuple(res)


def bell_numbers_check(l: int) -> int:
    """sum_m B_{l,m}(1, ..., 1), which is the Bell number of l."""
    return int(sum(t.coefficient for m in range(1, l + 1) for t in partial_bell(l, m)))


def multiset_contractions(ys: Sequence[Sequence[QuasiTrigPoly]]) -> Dict[Tuple[int, ...], QuasiTrigPoly]:
    """Expand y_1 (.) ... (.) y_L into {sorted index tuple: summed weight}.

    Grouping by sorted tuples is valid because mixed partials commute.
    """
    d = len(ys[0]) if ys else 0
    acc: Dict[Tuple[int, ...], QuasiTrigPoly] = {(): QuasiTrigPoly.const(1)}
    for y in ys:
        if len(y) != d:
            raise ValueError("all vectors of a multilinear application must have the same length")
        nxt: Dict[Tuple[int, ...], QuasiTrigPoly] = {}
        for alpha, w in acc.items():
            for c in range(d):
                if not y[c]:
                    continue
                key = tuple(sorted(alpha + (c,)))
                t = w * y[c]
                prev = nxt.get(key)
                nxt[key] = t if prev is None else prev + t
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def frechet_apply(F: Sequence[QuasiTrigPoly], z: Sequence[str], ys: Sequence[Sequence[QuasiTrigPoly]],
                  deriv: Callable[[int, Tuple[int, ...]], QuasiTrigPoly] | None = None) -> List[QuasiTrigPoly]:
    """d^L F (.) y_1 (.) ... (.) y_L for a vector F over the variables z.

    ``deriv(component, sorted index tuple)`` may supply cached partials.
    """
    d = len(z)
    if any(len(y) != d for y in ys):
        raise ValueError(f"dimension mismatch: vectors must have length {d}")
    if deriv is None:
        def deriv(comp, alpha):
            g = F[comp]
            for c in alpha:
                g = g.diff(z[c])
            return g
    weights = multiset_contractions(ys)
    out = []
    for comp in range(len(F)):
        total = QuasiTrigPoly()
        for alpha, w in weights.items():
            g = deriv(comp, alpha)
            if g:
                total = total + g * w
        out.append(total)
    return out


def frechet_apply_naive(F: Sequence[QuasiTrigPoly], z: Sequence[str],
                        ys: Sequence[Sequence[QuasiTrigPoly]]) -> List[QuasiTrigPoly]:
    """Same map as :func:`frechet_apply` by the plain sum over all index tuples."""
    d = len(z)
    if any(len(y) != d for y in ys):
        raise ValueError(f"dimension mismatch: vectors must have length {d}")
    out = []
    for comp in range(len(F)):
        total = QuasiTrigPoly()
        for idx in product(range(d), repeat=len(ys)):
            w = QuasiTrigPoly.const(1)
            for y, c in zip(ys, idx):
                w = w * y[c]
                if not w:
                    break
            if not w:
                continue
            g = F[comp]
            for c in idx:
                g = g.diff(z[c])
            total = total + g * w
        out.append(total)
    return out
