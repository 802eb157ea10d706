"""The general perturbed system of dimension n and degree N with named coefficients."""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Callable, Iterator, Optional, Tuple

from ..algebra.poly import MultiPoly
from .system import SystemSpec, xsym


def exponent_vectors(n: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """All exponent vectors of total degree ``degree`` in n variables, lexicographically descending."""
    out = set()
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for c in combo:
            e[c] += 1
        out.add(tuple(e))
    yield from sorted(out, reverse=True)


def coefficient_name(s: int, j: int, exps: Tuple[int, ...]) -> str:
    """a_..., b_..., c_..._s for unperturbed terms; a_e{j}_... etc. for eps^j terms."""
    head = "a" if s == 1 else "b" if s == 2 else "c"
    parts = [head]
    if j:
        parts.append(f"e{j}")
    parts.extend(str(e) for e in exps)
    if s >= 3:
        parts.append(str(s))
    return "_".join(parts)


def general_terms(n: int, N: int, k: int) -> Iterator[Tuple[int, int, Tuple[int, ...]]]:
    """(equation, eps power, exponents) of every admissible term."""
    for s in range(1, n + 1):
        for j in range(0, k + 1):
            for m in range(2 if j == 0 else 1, N + 1):
                for ex in exponent_vectors(n, m):
                    yield s, j, ex


def general_system(n: int, N: int, k: int, b=None,
                   coefficient: Optional[Callable[[str, int, int, Tuple[int, ...]], object]] = None,
                   max_order: Optional[int] = None) -> SystemSpec:
    """Build the general system; ``coefficient(name, s, j, exps)`` may replace a symbol by a value.

    With ``max_order`` only terms entering the standard form up to that eps
    order (j + degree - 1 <= max_order) are kept.
    """
    b = MultiPoly.var("b") if b is None else MultiPoly.coerce(b)
    xs = [MultiPoly.var(xsym(i)) for i in range(1, n + 1)]
    terms = {s: {} for s in range(1, n + 1)}
    params = []
    for s, j, ex in general_terms(n, N, k):
        if max_order is not None and j + sum(ex) - 1 > max_order:
            continue
        name = coefficient_name(s, j, ex)
        val = None if coefficient is None else coefficient(name, s, j, ex)
        if val is None:
            c = MultiPoly.var(name)
            params.append(name)
        else:
            c = MultiPoly.coerce(val)
            if c.is_zero():
                continue
            params.extend(sorted(c.free_symbols - set(params)))
        mono = {xsym(i + 1): e for i, e in enumerate(ex) if e}
        if j:
            mono["eps"] = j
        terms[s][name] = c * MultiPoly.monomial(mono)
    rhs = []
    for s in range(1, n + 1):
        acc = MultiPoly.const(0)
        if s == 1:
            acc = -b * xs[1]
        elif s == 2:
            acc = b * xs[0]
        for t in terms[s].values():
            acc = acc + t
        rhs.append(acc)
    if not b.is_constant():
        params = [p for p in b.free_symbols if p not in params] + params
    return SystemSpec(n=n, rhs=tuple(rhs), params=tuple(dict.fromkeys(params)), N=N, k=k, b=b)
