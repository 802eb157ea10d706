"""Standard form of averaging in polar/cylindrical coordinates.

After x = eps*X and X1 = R cos(theta), X2 = R sin(theta) the system becomes

    dR/dtheta  = R (cos S1 + sin S2) / (b R + cos S2 - sin S1)
    dXs/dtheta = R Ss / (b R + cos S2 - sin S1)

where S_s collects the nonlinear and perturbation terms of equation s; a term
eps^j x^i with |i| = m contributes at eps order j + m - 1.  The quotient is
expanded with a truncated geometric series.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from ..algebra.poly import MultiPoly, format_poly
from ..trig import EpsSeries, QuasiTrigPoly, eps_invert_unit, format_trig
from .system import SystemSpec


def eta_symbols(n: int) -> Tuple[str, ...]:
    return ("R",) + tuple(f"X{s}" for s in range(3, n + 1))


@dataclass(frozen=True)
class StandardForm:
    n: int
    k: int
    F: Tuple[Tuple[QuasiTrigPoly, ...], ...]   # F[j-1][c], c over (R, X3..Xn)
    params: Tuple[str, ...] = ()

    @property
    def eta(self) -> Tuple[str, ...]:
        return eta_symbols(self.n)

    def component(self, j: int, c: int) -> QuasiTrigPoly:
        """F_{j,c} with c = 1 for the R equation and c = 3..n for X_c."""
        return self.F[j - 1][0 if c == 1 else c - 2]

    def to_text(self) -> str:
        lines = []
        labels = [1] + list(range(3, self.n + 1))
        for j in range(1, self.k + 1):
            for c, lab in enumerate(labels):
                lines.append(f"F[{j}][{lab}] = {format_trig(self.F[j - 1][c])}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _cos_sin_power(a: int, b: int) -> QuasiTrigPoly:
    if a == 0 and b == 0:
        return QuasiTrigPoly.const(1)
    if a > 0:
        return _cos_sin_power(a - 1, b) * QuasiTrigPoly.cos(1)
    return _cos_sin_power(0, b - 1) * QuasiTrigPoly.sin(1)


def psi(exps: Tuple[int, ...], literal: bool = False) -> QuasiTrigPoly:
    """(R cos)^i1 (R sin)^i2 X3^i3 ... Xn^in.

    With ``literal`` the second factor is (R cos)^i2 instead, which is only
    useful for comparison with that variant of the formula.
    """
    i1, i2 = exps[0], exps[1]
    rest = {f"X{s}": e for s, e in enumerate(exps[2:], start=3) if e}
    mono = MultiPoly.monomial({"R": i1 + i2, **rest})
    trig = _cos_sin_power(i1 + i2, 0) if literal else _cos_sin_power(i1, i2)
    return trig.scale(mono)


def perturbation_series(spec: SystemSpec, k: int, literal_psi: bool = False) -> List[EpsSeries]:
    """S_s as eps-series of QuasiTrigPoly, for s = 1..n."""
    buckets: List[Dict[int, QuasiTrigPoly]] = [dict() for _ in range(spec.n)]
    for s, j, ex, c in spec.terms():
        m = sum(ex)
        if j == 0 and m == 1:
            continue
        order = j + m - 1
        if order > k:
            continue
        term = psi(ex, literal_psi).scale(c)
        prev = buckets[s - 1].get(order)
        buckets[s - 1][order] = term if prev is None else prev + term
    out = []
    for b in buckets:
        out.append(EpsSeries([b.get(i, QuasiTrigPoly()) for i in range(k + 1)], k))
    return out


def to_standard_form(spec: SystemSpec, k: int | None = None, literal_psi: bool = False) -> StandardForm:
    """F_{j,c} for j = 1..k of the standard form of averaging."""
    k = spec.k if k is None else k
    if k < 1:
        raise ValueError("averaging order must be >= 1")
    S = perturbation_series(spec, k, literal_psi)
    cos1, sin1 = QuasiTrigPoly.cos(1), QuasiTrigPoly.sin(1)
    R = MultiPoly.var("R")
    bR = QuasiTrigPoly.const(spec.b * R)
    den = EpsSeries([bR], k) + S[1] * cos1 - S[0] * sin1
    inv = eps_invert_unit(den)
    num_R = (S[0] * cos1 + S[1] * sin1) * R
    comps = [num_R * inv] + [(S[s] * R) * inv for s in range(2, spec.n)]
    F = tuple(tuple(comp[j] for comp in comps) for j in range(1, k + 1))
    return StandardForm(n=spec.n, k=k, F=F, params=spec.params)


__all__ = ["StandardForm", "to_standard_form", "psi", "eta_symbols", "perturbation_series", "format_poly"]
