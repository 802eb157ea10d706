"""Semi-algebraic systems built from averaged functions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..algebra.poly import MultiPoly, format_poly
from ..algebra.ratfn import RationalFn
from ..algebra.resultant import determinant
from ..averaging.engine import AveragedFunction


class DegenerateSystem(ValueError):
    """The averaged function has no isolated zeros with R > 0."""


def strip_numerator(p: MultiPoly, positive: Sequence[str] = ("R",)) -> MultiPoly:
    """Remove factors that cannot vanish: powers of R, pi, laurent parameters and constants.

    The sign is fixed so the leading term in canonical order is positive.
    """
    p = p.trimmed()
    if p.is_zero():
        return p
    strip = set(positive) | {"pi"} | (set(p.laurent) & set(p.symbols))
    content = p.monomial_content(strip)
    p = p.clear_monomial({s: e for s, e in content.items() if s in strip})
    c = p.rational_content()
    p = p.scale(1 / c)
    if p.leading_coefficient() < 0:
        p = -p
    return p.trimmed()


def jacobian_matrix(fs: Sequence[MultiPoly], unknowns: Sequence[str]) -> List[List[MultiPoly]]:
    return [[f.diff(u) for u in unknowns] for f in fs]


def jacobian_determinant(f: AveragedFunction) -> RationalFn:
    """det of the Jacobian of (f_{i,1}, f_{i,3}, ..., f_{i,n}) in (R, X3, ..., Xn)."""
    comps = f.laurent()
    det = determinant(jacobian_matrix(comps, f.eta))
    return RationalFn.from_laurent(det)


def substitute_rho(p: MultiPoly, name: str = "rho") -> MultiPoly:
    """Rewrite a polynomial that is even in R as a polynomial in rho = R^2."""
    if "R" not in p.trimmed().symbols:
        return p
    coeffs = p.coefficients_in("R")
    if any(e % 2 for e in coeffs):
        raise ValueError(f"polynomial is not even in R: {format_poly(p)}")
    out = MultiPoly.const(0)
    for e, c in coeffs.items():
        out = out + c * MultiPoly.var(name, e // 2)
    return out


@dataclass(frozen=True)
class SemiAlgebraicSystem:
    """equations = 0, positive > 0, nonzero != 0."""
    unknowns: Tuple[str, ...]
    equations: Tuple[MultiPoly, ...]
    jacobian: MultiPoly
    positive: Tuple[str, ...]
    nonzero: Tuple[MultiPoly, ...]
    order: int = 0
    flags: Tuple[str, ...] = ()
    rho: bool = False

    @property
    def degenerate(self) -> bool:
        return bool(self.flags)

    def parameters(self) -> Tuple[str, ...]:
        syms = set()
        for p in self.equations + (self.jacobian,) + self.nonzero:
            syms |= p.free_symbols
        syms -= set(self.unknowns) | {"pi"}
        from ..algebra.poly import symbol_key
        return tuple(sorted(syms, key=symbol_key))

    def to_text(self) -> str:
        lines = [f"unknowns: {', '.join(self.unknowns)}"]
        for i, p in enumerate(self.equations):
            lines.append(f"eq[{i + 1}]: {format_poly(p)} = 0")
        for s in self.positive:
            lines.append(f"ineq: {s} > 0")
        lines.append(f"ineq: {format_poly(self.jacobian)} != 0")
        for p in self.nonzero:
            lines.append(f"ineq: {format_poly(p)} != 0")
        for fl in self.flags:
            lines.append(f"flag: {fl}")
        return "\n".join(lines) + "\n"


NO_ISOLATED = "no isolated positive-R zeros"


def build_semialgebraic(f: AveragedFunction, extra_nonzero: Sequence[MultiPoly] = (),
                        b: Optional[MultiPoly] = None, rho: bool = False) -> SemiAlgebraicSystem:
    """Numerators of f, the Jacobian numerator and the side conditions."""
    eta = f.eta
    eqs = [strip_numerator(c.numerator) for c in f.components]
    flags = []
    for lab, e in zip(f.labels(), eqs):
        if e.is_zero():
            flags.append(f"{NO_ISOLATED}: f[{f.order}][{lab}] is identically zero")
        elif not (e.free_symbols & set(eta)):
            flags.append(f"{NO_ISOLATED}: f[{f.order}][{lab}] does not depend on {', '.join(eta)}")
    jac = strip_numerator(jacobian_determinant(f).numerator, positive=())
    if jac.is_zero() and not flags:
        flags.append(f"{NO_ISOLATED}: the Jacobian determinant vanishes identically")
    nonzero = []
    if b is not None and not b.is_constant():
        nonzero.append(b)
    for p in extra_nonzero:
        p = MultiPoly.coerce(p)
        if p not in nonzero and not p.is_constant():
            nonzero.append(p)
    unknowns = tuple(eta)
    positive = ("R",)
    if rho:
        eqs = [substitute_rho(e) for e in eqs]
        jac = substitute_rho(jac)
        unknowns = ("rho",) + unknowns[1:]
        positive = ("rho",)
    return SemiAlgebraicSystem(unknowns=unknowns, equations=tuple(eqs), jacobian=jac, positive=positive,
                               nonzero=tuple(nonzero), order=f.order, flags=tuple(flags), rho=rho)
