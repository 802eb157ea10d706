"""Recursive computation of the functions y_i and the averaged functions f_i."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..algebra.poly import MultiPoly, format_poly
from ..algebra.ratfn import RationalFn
from ..frontend.standard import StandardForm, to_standard_form
from ..frontend.system import SystemSpec
from ..trig import EpsSeries, QuasiTrigPoly, antiderivative, evaluate_at_period
from .bell import composition_tuples, frechet_apply, frechet_apply_naive, partial_bell

Vector = Tuple[QuasiTrigPoly, ...]


@dataclass(frozen=True)
class AveragedFunction:
    order: int
    eta: Tuple[str, ...]
    components: Tuple[RationalFn, ...]

    def labels(self) -> List[int]:
        return [1] + list(range(3, len(self.eta) + 2))

    def laurent(self) -> Tuple[MultiPoly, ...]:
        return tuple(c.as_laurent() for c in self.components)

    def is_zero(self) -> bool:
        return all(c.numerator.is_zero() for c in self.components)

    def to_text(self) -> str:
        return "".join(f"f[{self.order}][{lab}] = {format_poly(p)}\n"
                       for lab, p in zip(self.labels(), self.laurent()))


class AveragingSession:
    """Memoised y_1, y_2, ... for one standard form.

    ``route="bell"`` follows the partial Bell polynomial recurrence;
    ``route="tuples"`` sums over the tuples (b_1..b_l) with the factorial
    weights directly and contracts by the plain index sum.  Both give the
    same y_i and serve as checks on each other.
    """

    def __init__(self, sf: StandardForm, route: str = "bell"):
        if route not in ("bell", "tuples"):
            raise ValueError(f"unknown route {route!r}")
        self.sf = sf
        self.route = route
        self.eta = sf.eta
        self._y: Dict[int, Vector] = {}
        self._partials: Dict[Tuple[int, int, Tuple[int, ...]], QuasiTrigPoly] = {}

    @property
    def k(self) -> int:
        return self.sf.k

    def F(self, i: int) -> Vector:
        return self.sf.F[i - 1]

    def partial(self, i: int, comp: int, alpha: Tuple[int, ...]) -> QuasiTrigPoly:
        key = (i, comp, alpha)
        got = self._partials.get(key)
        if got is None:
            if alpha:
                got = self.partial(i, comp, alpha[:-1]).diff(self.eta[alpha[-1]])
            else:
                got = self.F(i)[comp]
            self._partials[key] = got
        return got

    def integrand(self, i: int) -> Vector:
        """The bracket under the integral defining y_i, before the factor i!."""
        total = list(self.F(i))
        for l in range(1, i):
            Fi = self.F(i - l)
            if all(not c for c in Fi):
                continue
            if self.route == "bell":
                contrib = self._bell_terms(i - l, l)
            else:
                contrib = self._tuple_terms(i - l, l)
            total = [a + b for a, b in zip(total, contrib)]
        return tuple(total)

    def _bell_terms(self, fi: int, l: int) -> List[QuasiTrigPoly]:
        acc = [QuasiTrigPoly() for _ in self.eta]
        inv_l = Fraction(1, factorial(l))
        for m in range(1, l + 1):
            for term in partial_bell(l, m):
                ys = [self.y(j) for j in term.factors()]
                part = frechet_apply(self.F(fi), self.eta, ys,
                                     deriv=lambda comp, alpha: self.partial(fi, comp, alpha))
                w = term.coefficient * inv_l
                acc = [a + p.scale(w) for a, p in zip(acc, part)]
        return acc

    def _tuple_terms(self, fi: int, l: int) -> List[QuasiTrigPoly]:
        acc = [QuasiTrigPoly() for _ in self.eta]
        for bs, w in composition_tuples(l):
            ys = [self.y(j) for j, b in enumerate(bs, start=1) for _ in range(b)]
            part = frechet_apply_naive(self.F(fi), self.eta, ys)
            acc = [a + p.scale(w) for a, p in zip(acc, part)]
        return acc

    def y(self, i: int) -> Vector:
        if not 1 <= i <= self.k:
            raise ValueError(f"order {i} outside 1..{self.k}")
        got = self._y.get(i)
        if got is None:
            fact = factorial(i)
            got = tuple(antiderivative(c).scale(fact) for c in self.integrand(i))
            self._y[i] = got
        return got

    def averaged(self, i: int) -> AveragedFunction:
        yi = self.y(i)
        inv = Fraction(1, factorial(i))
        comps = []
        for c in yi:
            val = evaluate_at_period(c).scale(inv)
            comps.append(RationalFn.from_laurent(val))
        return AveragedFunction(i, self.eta, tuple(comps))


def yk_recurrence(sf: StandardForm, i: int, session: Optional[AveragingSession] = None) -> Vector:
    return (session or AveragingSession(sf)).y(i)


def averaged_function(sf: StandardForm, i: int, session: Optional[AveragingSession] = None) -> AveragedFunction:
    return (session or AveragingSession(sf)).averaged(i)


class VanishingError(ValueError):
    """Lower-order averaged functions survive the supplied constraints."""

    def __init__(self, survivors: Dict[Tuple[int, int], MultiPoly]):
        self.survivors = survivors
        lines = [f"f[{i}][{c}] = {format_poly(p)}" for (i, c), p in sorted(survivors.items())]
        super().__init__("lower-order averaged functions do not vanish:\n  " + "\n  ".join(lines))


def impose_vanishing(spec: SystemSpec, constraints: Mapping[str, object], order: Optional[int] = None,
                     literal_psi: bool = False) -> SystemSpec:
    """Substitute ``constraints`` and check that f_1..f_{order-1} vanish identically."""
    order = spec.k if order is None else order
    new = spec.subs(constraints) if constraints else spec
    if order <= 1:
        return new
    sf = to_standard_form(new, order - 1, literal_psi=literal_psi)
    session = AveragingSession(sf)
    survivors = {}
    for i in range(1, order):
        f = session.averaged(i)
        for lab, p in zip(f.labels(), f.laurent()):
            if not p.is_zero():
                survivors[(i, lab)] = p
        if survivors:
            break
    if survivors:
        raise VanishingError(survivors)
    return new


def periodic_solution_approx(ys: Sequence[Sequence[QuasiTrigPoly]], zstar: Mapping[str, object],
                             j: int, eta: Sequence[str], values: Mapping[str, object] | None = None
                             ) -> List[EpsSeries]:
    """x(theta, eps) = z* + sum_{i<=j} eps^i y_i(theta, z*)/i! per component."""
    if j < 0 or j > len(ys):
        raise ValueError(f"need y_1..y_{j}, got {len(ys)}")
    bind = dict(values or {})
    bind.update(zstar)
    out = []
    for c, name in enumerate(eta):
        coeffs = [QuasiTrigPoly.const(MultiPoly.coerce(zstar[name]))]
        for i in range(1, j + 1):
            coeffs.append(ys[i - 1][c].subs(bind).scale(Fraction(1, factorial(i))))
        out.append(EpsSeries(coeffs, j))
    return out
