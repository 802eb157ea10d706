"""Certified counting of real solutions with R > 0 at a rational parameter point.

Every coordinate of a solution is a root of an eliminant obtained by
resultants, so the products of isolating intervals of the eliminants give
boxes holding at most one solution each.  A box is then refined until either
interval evaluation shows an equation cannot vanish there, or the Krawczyk
operator maps it into its own interior (which proves a unique solution).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..algebra import univariate as U
from ..algebra.interval import Interval, eval_poly
from ..algebra.poly import MultiPoly, format_poly, symbol_key
from ..algebra.resultant import resultant
from .semialg import DegenerateSystem, SemiAlgebraicSystem


class CertificationError(RuntimeError):
    pass


class NonIsolatedRoots(RuntimeError):
    pass


class UnboundParameters(ValueError):
    def __init__(self, names):
        self.names = tuple(names)
        super().__init__("unbound parameters: " + ", ".join(self.names))


@dataclass(frozen=True)
class RootBox:
    intervals: Tuple[Tuple[Fraction, Fraction], ...]
    jacobian_sign: int

    def contains_point(self, pt: Sequence[float]) -> bool:
        return all(float(lo) <= x <= float(hi) for (lo, hi), x in zip(self.intervals, pt))

    def midpoint(self) -> Tuple[float, ...]:
        return tuple(float((lo + hi) / 2) for lo, hi in self.intervals)


@dataclass(frozen=True)
class BifurcationReport:
    point: Tuple[Tuple[str, Fraction], ...]
    unknowns: Tuple[str, ...]
    count: int
    boxes: Tuple[RootBox, ...]
    bkk: Optional[int] = None
    order: int = 0
    notes: Tuple[str, ...] = ()

    def with_bkk(self, bkk: int) -> "BifurcationReport":
        return BifurcationReport(self.point, self.unknowns, self.count, self.boxes, bkk, self.order, self.notes)


# -- elimination -----------------------------------------------------------------

def _split_monomial_factors(p: MultiPoly, unknowns: Sequence[str]) -> List[MultiPoly]:
    """Alternatives whose union of zero sets is the zero set of p."""
    content = {s: e for s, e in p.monomial_content(unknowns).items() if e > 0}
    if not content:
        return [p]
    rest = p.clear_monomial(content)
    return [rest] + [MultiPoly.var(s) for s in content]


def _univariate(p: MultiPoly, var: str) -> List[Fraction]:
    return U.trim(p.to_univariate(var))


def _eliminate(polys: List[MultiPoly], order: Sequence[str]) -> List[MultiPoly]:
    """Project by successive resultants, removing the variables in ``order``."""
    cur = [p for p in polys]
    for x in order:
        with_x = [p for p in cur if x in p.free_symbols]
        without = [p for p in cur if x not in p.free_symbols]
        if len(with_x) <= 1:
            cur = without
            continue
        res = []
        for i in range(len(with_x)):
            for j in range(i + 1, len(with_x)):
                r = resultant(with_x[i], with_x[j], x)
                if not r.is_zero():
                    if r not in res:
                        res.append(r)
        if not res:
            raise NonIsolatedRoots("non-isolated roots: resultants vanish identically")
        cur = without + res
    return cur


def eliminant(polys: Sequence[MultiPoly], var: str, unknowns: Sequence[str]) -> List[Fraction]:
    """Squarefree univariate polynomial in ``var`` vanishing at every solution coordinate."""
    others = [u for u in unknowns if u != var]
    # eliminate the variable of lowest degree first
    others.sort(key=lambda u: (max(p.degree(u) if u in p.free_symbols else 0 for p in polys), symbol_key(u)))
    proj = _eliminate(list(polys), others)
    g: Optional[List[Fraction]] = None
    for p in proj:
        if p.free_symbols - {var}:
            continue
        u = _univariate(p, var)
        g = u if g is None else U.gcd(g, u)
    if g is None:
        raise NonIsolatedRoots(f"non-isolated roots: no eliminant in {var}")
    if not g:
        raise NonIsolatedRoots(f"non-isolated roots: eliminant in {var} vanishes")
    return U.squarefree_part(g)


def coordinate_eliminants(eqs: Sequence[MultiPoly], unknowns: Sequence[str]) -> Dict[str, List[Fraction]]:
    """Eliminants covering every branch obtained by splitting off monomial factors."""
    alternatives = [_split_monomial_factors(p, unknowns) for p in eqs]
    out: Dict[str, List[Fraction]] = {}
    for choice in product(*alternatives):
        linear_zero = {str(q.trimmed().symbols[0]) for q in choice if q.is_monomial() and q.degree() == 1}
        for var in unknowns:
            if var in linear_zero:
                e = [Fraction(0), Fraction(1)]
            else:
                e = eliminant(list(choice), var, unknowns)
            prev = out.get(var)
            out[var] = e if prev is None else U.mul(prev, e)
    return {v: U.squarefree_part(e) for v, e in out.items()}


# -- isolating intervals ------------------------------------------------------------

def _open_around(p, a: Fraction) -> Tuple[Fraction, Fraction]:
    """Open isolating interval of the exact root a of squarefree p."""
    d = Fraction(1)
    while len(U.isolate_squarefree(p, a - d, a + d)) != 1:
        d /= 2
    return a - d, a + d / 2


def _shrink(p, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """Bisect an open isolating interval, never collapsing it to a point."""
    m = (lo + hi) / 2
    sm = U.sign(U.evaluate(p, m))
    if sm == 0:
        w = hi - lo
        return m - w / 4, m + w / 8
    slo = U.sign(U.evaluate(p, lo))
    if slo == 0:
        slo = U._sign_right_of(p, lo)
    return (m, hi) if sm == slo else (lo, m)


def coordinate_intervals(p, positive: bool) -> List[Tuple[Fraction, Fraction]]:
    if U.degree(p) <= 0:
        return []
    out = []
    for ri in U.isolate_real_roots(p, Fraction(0) if positive else None, None):
        lo, hi = ri.lo, ri.hi
        if positive and hi <= 0:
            continue
        if lo == hi:
            lo, hi = _open_around(p, lo)
        if positive:
            while lo < 0:
                lo, hi = _shrink(p, lo, hi)
        out.append((lo, hi))
    return out


# -- Krawczyk ----------------------------------------------------------------------

def _solve_float_inverse(M: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(A[r][c]))
        if A[piv][c] == 0:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    # rounding to doubles keeps the rationals in the operator small
    return [[Fraction(float(x)) for x in row[n:]] for row in A]


def krawczyk(eqs, jac, unknowns, box: List[Interval]) -> str:
    """'inside' if a unique root is proven, 'empty' if none can exist, else 'unknown'."""
    n = len(unknowns)
    mid = [iv.midpoint() for iv in box]
    point = dict(zip(unknowns, mid))
    fm = [e.evaluate(point) for e in eqs]
    Jm = [[d.evaluate(point) for d in row] for row in jac]
    Y = _solve_float_inverse(Jm)
    if Y is None:
        return "unknown"
    env = dict(zip(unknowns, box))
    JX = [[eval_poly(d, env) for d in row] for row in jac]
    status = "inside"
    for i in range(n):
        k = Interval(mid[i] - sum(Y[i][j] * fm[j] for j in range(n)))
        for j in range(n):
            # (I - Y J(X))_{ij} (X_j - m_j)
            acc = Interval(Fraction(int(i == j)))
            for l in range(n):
                if Y[i][l]:
                    acc = acc - JX[l][j] * Y[i][l]
            k = k + acc * (box[j] - mid[j])
        if not k.intersects(box[i]):
            return "empty"
        if not k.subset_interior(box[i]):
            status = "unknown"
    return status


# -- main entry point -----------------------------------------------------------------

def bind_system(s: SemiAlgebraicSystem, point: Mapping[str, object]):
    pt = {k: Fraction(v) for k, v in point.items()}
    eqs = [e.subs(pt) for e in s.equations]
    jac = s.jacobian.subs(pt)
    nonzero = [q.subs(pt) for q in s.nonzero]
    unbound = set()
    for p in eqs + [jac] + nonzero:
        unbound |= p.free_symbols - set(s.unknowns) - {"pi"}
    if unbound:
        raise UnboundParameters(sorted(unbound, key=symbol_key))
    for q in nonzero:
        if q.is_constant() and q.constant_value() == 0:
            raise ValueError(f"side condition {format_poly(q)} != 0 fails at the parameter point")
    return pt, eqs, jac, [q for q in nonzero if not q.is_constant()]


def count_positive_roots(s: SemiAlgebraicSystem, point: Mapping[str, object], max_depth: int = 200,
                         min_width: Optional[Fraction] = None) -> BifurcationReport:
    if s.degenerate:
        raise DegenerateSystem("; ".join(s.flags))
    pt, eqs, jac_poly, nonzero = bind_system(s, point)
    unknowns = s.unknowns
    point_items = tuple(sorted(pt.items(), key=lambda kv: symbol_key(kv[0])))
    for e in eqs:
        if not (e.free_symbols & set(unknowns)):
            if e.is_zero():
                raise NonIsolatedRoots("non-isolated roots: an equation vanishes identically at the point")
            return BifurcationReport(point_items, unknowns, 0, (), order=s.order,
                                     notes=("an equation is a nonzero constant at this point",))
    elims = coordinate_eliminants(eqs, unknowns)
    coord = {v: coordinate_intervals(elims[v], v in s.positive) for v in unknowns}
    jac = [[e.diff(u) for u in unknowns] for e in eqs]
    boxes = []
    for combo in product(*(coord[v] for v in unknowns)):
        got = _certify(eqs, jac, jac_poly, nonzero, unknowns, elims, list(combo), max_depth, min_width)
        if got is not None:
            boxes.append(got)
    return BifurcationReport(point_items, unknowns, len(boxes), tuple(boxes), order=s.order)


def _certify(eqs, jac, jac_poly, nonzero, unknowns, elims, ivs, max_depth, min_width):
    proven = False
    for _ in range(max_depth):
        box = [Interval(lo, hi) for lo, hi in ivs]
        env = dict(zip(unknowns, box))
        if not proven:
            if any(eval_poly(e, env).excludes_zero() for e in eqs):
                return None
            status = krawczyk(eqs, jac, unknowns, box)
            if status == "empty":
                return None
            proven = status == "inside"
        if proven:
            sign = eval_poly(jac_poly, env).sign()
            side_ok = all(eval_poly(q, env).excludes_zero() for q in nonzero)
            narrow = min_width is None or all(hi - lo < min_width for lo, hi in ivs)
            if sign != 0 and side_ok and narrow:
                return RootBox(tuple(ivs), sign)
        ivs = [_shrink(elims[v], lo, hi) for v, (lo, hi) in zip(unknowns, ivs)]
    raise CertificationError("certification failed, increase depth")
