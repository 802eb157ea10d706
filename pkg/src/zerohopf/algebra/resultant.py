"""Sylvester resultants of multivariate polynomials."""
from __future__ import annotations

from fractions import Fraction
from typing import List

from .poly import MultiPoly


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a / b, raising ``ArithmeticError`` if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    if b.is_constant():
        return a.scale(1 / b.constant_value())
    syms = MultiPoly.union_symbols(a, b)
    rem = dict(a.aligned(syms))
    divisor = b.aligned(syms)
    lead = max(divisor)  # lex order over the canonical symbol order
    lead_c = divisor[lead]
    quot = {}
    while rem:
        m = max(rem)
        q = tuple(x - y for x, y in zip(m, lead))
        if any(e < 0 for e in q):
            raise ArithmeticError("polynomial division is not exact")
        c = rem[m] / lead_c
        quot[q] = c
        for mb, cb in divisor.items():
            key = tuple(x + y for x, y in zip(q, mb))
            v = rem.get(key, 0) - c * cb
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return MultiPoly(quot, syms, a.laurent | b.laurent, _trusted=True)


def determinant(matrix: List[List[MultiPoly]]) -> MultiPoly:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix.

    Rows with negative exponents (laurent entries) are first multiplied by a
    monomial so that the exact divisions stay polynomial.
    """
    n = len(matrix)
    if n == 0:
        return MultiPoly.const(1)
    m = []
    shift: dict = {}
    for row in matrix:
        low: dict = {}
        for e in row:
            for s, d in e.monomial_content().items():
                if d < 0:
                    low[s] = min(low.get(s, 0), d)
        if low:
            mono = {s: -d for s, d in low.items()}
            row = [e.clear_monomial(low) for e in row]
            for s, d in mono.items():
                shift[s] = shift.get(s, 0) + d
        m.append(list(row))
    det = _bareiss(m)
    return det.clear_monomial(shift) if shift and not det.is_zero() else det


def _bareiss(m: List[List[MultiPoly]]) -> MultiPoly:
    n = len(m)
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.const(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_divide(pivot * m[i][j] - m[i][k] * m[k][j], prev)
        prev = pivot
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def sylvester_matrix(p: MultiPoly, q: MultiPoly, sym: str) -> List[List[MultiPoly]]:
    pc, qc = p.coefficients_in(sym), q.coefficients_in(sym)
    dp, dq = max(pc), max(qc)
    zero = MultiPoly.const(0)
    size = dp + dq
    rows = []
    for i in range(dq):
        row = [zero] * size
        for e, c in pc.items():
            row[i + dp - e] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * size
        for e, c in qc.items():
            row[i + dq - e] = c
        rows.append(row)
    return rows


def resultant(p: MultiPoly, q: MultiPoly, sym: str) -> MultiPoly:
    """Resultant of p and q with respect to ``sym``.

    Negative exponents in other symbols are cleared before elimination and
    restored afterwards, so Laurent coefficients are accepted.
    """
    if p.is_zero() or q.is_zero():
        return MultiPoly.const(0)
    if p.min_degree(sym) < 0 or q.min_degree(sym) < 0:
        raise ValueError(f"resultant needs polynomials (not Laurent) in {sym}")
    dp, dq = p.degree(sym), q.degree(sym)
    if dp == 0 and dq == 0:
        raise ValueError(f"both polynomials have degree 0 in {sym}")
    shift_p = {s: -e for s, e in p.monomial_content().items() if e < 0}
    shift_q = {s: -e for s, e in q.monomial_content().items() if e < 0}
    pp = p.clear_monomial({s: -e for s, e in shift_p.items()})
    qq = q.clear_monomial({s: -e for s, e in shift_q.items()})
    if dp == 0:
        res = pp ** dq
    elif dq == 0:
        res = qq ** dp
    else:
        res = determinant(sylvester_matrix(pp, qq, sym))
    # res(m1 p, m2 q) = m1^dq m2^dp res(p, q)
    undo = {}
    for s, e in shift_p.items():
        undo[s] = undo.get(s, 0) + e * dq
    for s, e in shift_q.items():
        undo[s] = undo.get(s, 0) + e * dp
    return res.clear_monomial(undo)


def content_free(p: MultiPoly) -> MultiPoly:
    """Divide out the positive rational content."""
    c = p.rational_content()
    return p if not c else p.scale(Fraction(1) / c)
