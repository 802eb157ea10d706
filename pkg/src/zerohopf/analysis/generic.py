"""Random instances of the general system with lower-order averages forced to zero."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..algebra.poly import MultiPoly, symbol_key
from ..averaging.engine import AveragingSession, impose_vanishing
from ..frontend.general import general_system
from ..frontend.standard import to_standard_form
from ..frontend.system import SystemSpec
from .mixed_volume import mixed_volume
from .semialg import build_semialgebraic


def random_nonzero(rng: random.Random, size: int = 9) -> Fraction:
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, size), rng.randint(1, size))


def linear_forms(p: MultiPoly, unknowns: Sequence[str]) -> List[MultiPoly]:
    """Coefficients of ``p`` with respect to every symbol outside ``unknowns``."""
    t = p.trimmed()
    keep = [i for i, s in enumerate(t.symbols) if s in unknowns]
    groups: Dict[Tuple, Dict] = {}
    for m, c in t.terms.items():
        key = tuple((i, e) for i, e in enumerate(m) if i not in keep and e)
        groups.setdefault(key, {})[tuple(m[i] for i in keep)] = c
    syms = tuple(t.symbols[i] for i in keep)
    return [MultiPoly(g, syms) for _, g in sorted(groups.items())]


def solve_linear(forms: Sequence[MultiPoly], unknowns: Sequence[str]) -> Dict[str, MultiPoly]:
    """Solve forms = 0, each affine in ``unknowns``; pivots are expressed in the remaining symbols."""
    sol: Dict[str, MultiPoly] = {}
    pending = [f for f in forms]
    while pending:
        f = pending.pop(0).subs(sol) if sol else pending.pop(0)
        if f.is_zero():
            continue
        cands = sorted((u for u in unknowns if u in f.free_symbols and u not in sol), key=symbol_key)
        if not cands:
            raise ValueError(f"inconsistent linear conditions: {f} = 0")
        x = cands[-1]
        coeffs = f.coefficients_in(x)
        if set(coeffs) - {0, 1} or not coeffs[1].is_constant():
            raise ValueError(f"condition is not linear in {x}: {f}")
        rest = coeffs.get(0, MultiPoly.const(0))
        val = -rest / coeffs[1].constant_value()
        sol = {k: v.subs({x: val}) for k, v in sol.items()}
        sol[x] = val
    return sol


def vanishing_instance(n: int, N: int, seed: int, b=None) -> Tuple[SystemSpec, Dict[str, Fraction]]:
    """Random rational instance of the general system with f_1 identically zero.

    Coefficients that enter f_1 start symbolic; the linear conditions
    f_1 = 0 are solved for some of them and the rest are drawn at random.
    """
    rng = random.Random(seed)
    b = random_nonzero(rng) if b is None else b
    drawn: Dict[str, Fraction] = {}

    def coeff(name, s, j, ex):
        if j + sum(ex) - 1 == 1:
            return None
        drawn[name] = random_nonzero(rng)
        return drawn[name]

    spec = general_system(n, N, 2, b=b, coefficient=coeff, max_order=2)
    symbolic = [p for p in spec.params if p not in drawn]
    f1 = AveragingSession(to_standard_form(spec, 1)).averaged(1)
    forms = []
    for comp in f1.components:
        forms.extend(linear_forms(comp.numerator, symbolic))
    sol = solve_linear(forms, symbolic)
    values = {}
    for p in symbolic:
        if p not in sol:
            values[p] = random_nonzero(rng)
    for p, expr in sol.items():
        values[p] = expr.subs(values).constant_value()
    spec2 = impose_vanishing(spec, values, order=2)
    drawn.update(values)
    return spec2, drawn


def generic_order2_bkk(n: int, N: int, seed: int = 0) -> int:
    """Mixed volume of the order-2 averaged numerators (in rho, X3..Xn) of a random instance."""
    spec, _ = vanishing_instance(n, N, seed)
    f2 = AveragingSession(to_standard_form(spec, 2)).averaged(2)
    s = build_semialgebraic(f2, rho=True)
    return mixed_volume(s.equations, s.unknowns)
