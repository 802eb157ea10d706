"""Mixed volumes of Newton polytopes (BKK bound).

MV(P_1..P_n) = sum over nonempty S of (-1)^(n-|S|) vol(sum_{i in S} P_i),
normalised so that n copies of the standard simplex give 1.  Hull facets
come from qhull; volumes are summed exactly as rational determinants.

With ``affine=True`` the origin is added to every support first, which
turns the count of roots in the complex torus into a bound for all roots
in affine space, including those with some coordinate equal to zero.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ..algebra.poly import MultiPoly

Point = Tuple[int, ...]


def support(p: MultiPoly, unknowns: Sequence[str]) -> FrozenSet[Point]:
    """Exponent vectors of ``p`` in the unknowns (coefficients may carry parameters)."""
    t = p.trimmed()
    idx = [t.symbols.index(u) if u in t.symbols else None for u in unknowns]
    pts = set()
    for m in t.terms:
        pt = tuple(m[i] if i is not None else 0 for i in idx)
        if any(e < 0 for e in pt):
            raise ValueError("negative exponent in an unknown; clear denominators first")
        pts.add(pt)
    return frozenset(pts)


def _affine_rank(pts: List[Point]) -> int:
    if len(pts) <= 1:
        return 0
    base = np.array(pts[0], dtype=float)
    M = np.array(pts[1:], dtype=float) - base
    return int(np.linalg.matrix_rank(M))


def _det(rows: List[List[Fraction]]) -> Fraction:
    n = len(rows)
    A = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def hull_vertices(pts: Iterable[Point]) -> List[Point]:
    pts = sorted(set(pts))
    if not pts:
        return []
    d = len(pts[0])
    if d == 1:
        return [pts[0], pts[-1]] if pts[0] != pts[-1] else [pts[0]]
    if len(pts) <= d or _affine_rank(pts) < d:
        return pts
    hull = ConvexHull(np.array(pts, dtype=float))
    return sorted(pts[i] for i in hull.vertices)


def volume(pts: Iterable[Point]) -> Fraction:
    """Exact Euclidean volume of the convex hull of lattice points."""
    pts = sorted(set(pts))
    if not pts:
        return Fraction(0)
    d = len(pts[0])
    if d == 1:
        return Fraction(pts[-1][0] - pts[0][0])
    if len(pts) <= d or _affine_rank(pts) < d:
        return Fraction(0)
    try:
        hull = ConvexHull(np.array(pts, dtype=float), qhull_options="Qt")
    except QhullError:
        return Fraction(0)
    verts = [pts[i] for i in hull.vertices]
    centre = [Fraction(sum(v[c] for v in verts), len(verts)) for c in range(d)]
    total = Fraction(0)
    for simplex in hull.simplices:
        rows = [[Fraction(pts[i][c]) - centre[c] for c in range(d)] for i in simplex]
        total += abs(_det(rows))
    return total / factorial(d)


def minkowski_sum(a: Iterable[Point], b: Iterable[Point]) -> List[Point]:
    return hull_vertices({tuple(x + y for x, y in zip(p, q)) for p in a for q in b})


def mixed_volume_of_supports(supports: Sequence[Iterable[Point]]) -> int:
    n = len(supports)
    sets = [hull_vertices(s) for s in supports]
    if any(not s for s in sets):
        return 0
    if any(len(s[0]) != n for s in sets):
        raise ValueError(f"need {n} supports in {n} unknowns")
    total = Fraction(0)
    for r in range(1, n + 1):
        for S in combinations(range(n), r):
            acc = sets[S[0]]
            for i in S[1:]:
                acc = minkowski_sum(acc, sets[i])
            total += (-1) ** (n - r) * volume(acc)
    if total.denominator != 1:
        raise ArithmeticError(f"mixed volume {total} is not an integer")
    return int(total)


def mixed_volume(polys: Sequence[MultiPoly], unknowns: Sequence[str], affine: bool = True) -> int:
    if len(polys) != len(unknowns):
        raise ValueError(f"dimension mismatch: {len(polys)} polynomials in {len(unknowns)} unknowns")
    sups = [support(p, unknowns) for p in polys]
    if affine:
        origin = tuple(0 for _ in unknowns)
        sups = [s | {origin} for s in sups]
    return mixed_volume_of_supports(sups)
