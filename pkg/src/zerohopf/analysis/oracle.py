"""Independent root counter: float interval subdivision with a Krawczyk test.

Used to cross-check the elimination-based counter.  It needs no resultants:
boxes are discarded when an equation provably does not vanish, accepted when
the Krawczyk operator maps them into their interior, and bisected otherwise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple

from ..algebra.interval import Interval, eval_poly
from ..algebra.poly import MultiPoly


@dataclass
class OracleResult:
    roots: List[Tuple[Tuple[float, float], ...]]
    unresolved: List[Tuple[Tuple[float, float], ...]]

    @property
    def count(self) -> int:
        return len(self.roots)


def _inverse(M: List[List[float]]):
    n = len(M)
    A = [list(map(float, row)) + [float(i == j) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(A[r][c]))
        if A[piv][c] == 0.0:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = 1.0 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0.0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def subdivision_count(equations: Sequence[MultiPoly], unknowns: Sequence[str],
                      box: Sequence[Tuple[float, float]], min_width: float = 1e-9,
                      max_boxes: int = 2_000_000) -> OracleResult:
    """Count zeros inside ``box`` (open at its faces) by bisection."""
    n = len(unknowns)
    jac = [[e.diff(u) for u in unknowns] for e in equations]
    queue = deque([tuple((float(lo), float(hi)) for lo, hi in box)])
    roots, unresolved = [], []
    seen = 0
    while queue:
        seen += 1
        if seen > max_boxes:
            unresolved.extend(queue)
            break
        b = queue.popleft()
        X = [Interval(lo, hi) for lo, hi in b]
        env = dict(zip(unknowns, X))
        if any(eval_poly(e, env, floating=True).excludes_zero() for e in equations):
            continue
        mid = [(lo + hi) / 2 for lo, hi in b]
        mp = dict(zip(unknowns, (Interval.coerce(m, True) for m in mid)))
        fm = [eval_poly(e, mp, floating=True) for e in equations]
        Jm = [[float(eval_poly(d, mp, floating=True).midpoint()) for d in row] for row in jac]
        Y = _inverse(Jm)
        status = "unknown"
        if Y is not None:
            JX = [[eval_poly(d, env, floating=True) for d in row] for row in jac]
            status = "inside"
            for i in range(n):
                k = Interval.coerce(mid[i], True)
                for j in range(n):
                    k = k - fm[j] * Y[i][j]
                for j in range(n):
                    acc = Interval.coerce(float(i == j), True)
                    for l in range(n):
                        acc = acc - JX[l][j] * Y[i][l]
                    k = k + acc * (X[j] - mid[j])
                if not k.intersects(X[i]):
                    status = "empty"
                    break
                if not k.subset_interior(X[i]):
                    status = "unknown"
        if status == "empty":
            continue
        if status == "inside":
            roots.append(b)
            continue
        widths = [hi - lo for lo, hi in b]
        w = max(widths)
        if w < min_width:
            unresolved.append(b)
            continue
        c = widths.index(w)
        lo, hi = b[c]
        # split slightly off centre so roots at dyadic points do not sit on a face
        cut = lo + (hi - lo) * 0.4990234375
        left = list(b)
        right = list(b)
        left[c] = (lo, cut)
        right[c] = (cut, hi)
        queue.append(tuple(left))
        queue.append(tuple(right))
    return OracleResult(roots, unresolved)


def oracle_count(equations: Sequence[MultiPoly], unknowns: Sequence[str], point: Mapping[str, object],
                 box: Sequence[Tuple[float, float]], **kw) -> OracleResult:
    pt = {k: Fraction(v) for k, v in point.items()}
    eqs = [e.subs(pt) for e in equations]
    return subdivision_count(eqs, unknowns, box, **kw)
