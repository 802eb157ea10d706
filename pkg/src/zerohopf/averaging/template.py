"""Symbolic recurrence templates with uninterpreted F_{i,c} and y_{j,c}."""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Tuple

from .bell import partial_bell


@dataclass(frozen=True)
class TemplateTerm:
    coefficient: Fraction
    f_order: int                        # F_{f_order, component}
    derivative: Tuple[int, ...]         # sorted variable indices, 1-based
    y_factors: Tuple[Tuple[int, int], ...]   # sorted (order j, component)

    def to_text(self, comp: int) -> str:
        parts = []
        if self.coefficient != 1:
            parts.append(str(self.coefficient))
        f = f"F[{self.f_order}][{comp}]"
        if self.derivative:
            f = "D[" + ",".join(f"z{c}" for c in self.derivative) + "]" + f
        parts.append(f)
        i = 0
        ys = self.y_factors
        while i < len(ys):
            e = 1
            while i + e < len(ys) and ys[i + e] == ys[i]:
                e += 1
            j, c = ys[i]
            parts.append(f"y[{j}][{c}]" + (f"^{e}" if e > 1 else ""))
            i += e
        return "*".join(parts)


def template_terms(i: int, n: int) -> List[TemplateTerm]:
    """Terms of the integrand of y_{i,comp}, scaled by i!.

    Ordering: the F_i term, then l ascending, m ascending, and within each
    (l, m) Bell terms in order and derivative index tuples lexicographically.
    """
    if i < 1 or n < 1:
        raise ValueError("need i >= 1 and n >= 1")
    fact = factorial(i)
    out: List[TemplateTerm] = [TemplateTerm(Fraction(fact), i, (), ())]
    for l in range(1, i):
        for m in range(1, l + 1):
            merged: "OrderedDict[Tuple, Fraction]" = OrderedDict()
            for bt in partial_bell(l, m):
                factors = bt.factors()
                w = Fraction(fact, factorial(l)) * bt.coefficient
                for idx in product(range(1, n + 1), repeat=len(factors)):
                    deriv = tuple(sorted(idx))
                    ys = tuple(sorted(zip(factors, idx)))
                    key = (deriv, ys)
                    merged[key] = merged.get(key, Fraction(0)) + w
            keys = sorted(merged, key=lambda kv: (kv[0], [(-j, c) for j, c in kv[1]]))
            for deriv, ys in keys:
                out.append(TemplateTerm(merged[(deriv, ys)], i - l, deriv, ys))
    return out


def formula_text(k: int, n: int) -> Tuple[str, Dict[Tuple[int, int], int]]:
    """Template text of y_1..y_k for dimension n, with the term count per (i, n)."""
    if k < 1 or n < 2:
        raise ValueError("need k >= 1 and n >= 2")
    lines = []
    counts = {}
    for i in range(1, k + 1):
        terms = template_terms(i, n)
        counts[(i, n)] = len(terms) * n
        for comp in range(1, n + 1):
            body = " + ".join(t.to_text(comp) for t in terms)
            lines.append(f"y[{i}][{comp}](t) = int_0^t ( {body} ) dtheta")
    return "\n".join(lines) + "\n", counts
