"""Perturbed polynomial systems with a zero-Hopf linear part."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..algebra.poly import DEFAULT_LAURENT, LaurentError, MultiPoly, format_poly
from ..algebra.resultant import determinant


class SpecError(ValueError):
    """The system is not of the accepted perturbed zero-Hopf form."""


def xsym(i: int) -> str:
    return f"x{i}"


@dataclass(frozen=True)
class RawSystem:
    """Polynomial vector field in x1..xn, eps and parameters (any linear part)."""
    n: int
    rhs: Tuple[MultiPoly, ...]
    params: Tuple[str, ...] = ()
    laurent: frozenset = DEFAULT_LAURENT
    N: Optional[int] = None
    k: Optional[int] = None
    b: Optional[MultiPoly] = None

    @property
    def xs(self) -> Tuple[str, ...]:
        return tuple(xsym(i) for i in range(1, self.n + 1))

    def terms(self) -> Iterator[Tuple[int, int, Tuple[int, ...], MultiPoly]]:
        """Yield (equation, eps power, x exponents, coefficient) for every term."""
        xs = self.xs
        for s, f in enumerate(self.rhs, start=1):
            pos = {sym: i for i, sym in enumerate(f.symbols)}
            xi = [pos.get(x) for x in xs]
            ei = pos.get("eps")
            rest_idx = [i for i, sym in enumerate(f.symbols) if sym not in xs and sym != "eps"]
            rest_syms = tuple(f.symbols[i] for i in rest_idx)
            groups: Dict[Tuple[int, Tuple[int, ...]], Dict] = {}
            for m, c in f.terms.items():
                j = m[ei] if ei is not None else 0
                ex = tuple(m[i] if i is not None else 0 for i in xi)
                groups.setdefault((j, ex), {})[tuple(m[i] for i in rest_idx)] = c
            for (j, ex), terms in sorted(groups.items()):
                yield s, j, ex, MultiPoly(terms, rest_syms, f.laurent)


@dataclass(frozen=True)
class SystemSpec(RawSystem):
    """Validated perturbed system of the form

        x1' = -b x2 + (degree >= 2 terms) + sum_j eps^j (degree >= 1 terms)
        x2' =  b x1 + ...
        xs' =          ...                                   (s = 3..n)
    """
    N: int = 2
    k: int = 1
    b: MultiPoly = field(default_factory=lambda: MultiPoly.const(1))

    def __post_init__(self):
        validate(self)

    def truncate(self, k: int) -> "SystemSpec":
        """Drop every eps^j term with j > k."""
        if k < 1:
            raise SpecError("averaging order must be >= 1")
        rhs = tuple(_drop_eps_above(f, k) for f in self.rhs)
        return replace(self, rhs=rhs, k=k)

    def subs(self, bindings: Mapping[str, object]) -> "SystemSpec":
        rhs = tuple(f.subs(bindings) for f in self.rhs)
        b = self.b.subs(bindings)
        params = tuple(p for p in self.params if p not in bindings)
        return replace(self, rhs=rhs, b=b, params=params)

    def coefficient_table(self) -> Dict[Tuple[int, int, Tuple[int, ...]], MultiPoly]:
        """Map (equation, eps order j, exponents) to the coefficient, Jordan part excluded."""
        out = {}
        for s, j, ex, c in self.terms():
            if j == 0 and sum(ex) == 1:
                continue
            out[(s, j, ex)] = c
        return out


def _drop_eps_above(f: MultiPoly, k: int) -> MultiPoly:
    if "eps" not in f.symbols:
        return f
    i = f.symbols.index("eps")
    return MultiPoly({m: c for m, c in f.terms.items() if m[i] <= k}, f.symbols, f.laurent, _trusted=True)


def validate(spec: SystemSpec) -> None:
    n = spec.n
    if n < 3:
        raise SpecError("dimension n must be >= 3")
    if spec.N < 2:
        raise SpecError("degree N must be >= 2")
    if spec.k < 1:
        raise SpecError("averaging order k must be >= 1")
    if len(spec.rhs) != n:
        raise SpecError(f"expected {n} equations, got {len(spec.rhs)}")
    if spec.b.is_zero():
        raise SpecError("frequency b must be nonzero")
    if not spec.b.is_monomial():
        raise SpecError(f"frequency b must be a rational or a monomial, got {spec.b}")
    if spec.b.trimmed().symbols:
        try:
            spec.b.inverse_monomial()
        except LaurentError as exc:
            raise SpecError(f"frequency b must be invertible: {exc}") from exc
    xs = spec.xs
    linear: Dict[int, MultiPoly] = {s: MultiPoly.const(0) for s in range(1, n + 1)}
    for s, j, ex, c in spec.terms():
        deg = sum(ex)
        if any(e < 0 for e in ex):
            raise SpecError(f"negative power of a phase variable in equation {s}")
        if deg == 0:
            raise SpecError(f"equation dx{s} has a term of degree 0 in x (eps^{j} coefficient {c})")
        if deg > spec.N:
            raise SpecError(f"equation dx{s} has a term of degree {deg} > N = {spec.N}")
        if j > spec.k:
            raise SpecError(f"equation dx{s} has an eps^{j} term but k = {spec.k}")
        if j == 0 and deg == 1:
            linear[s] = linear[s] + c * MultiPoly.var(xs[ex.index(1)])
    expected = {1: -spec.b * MultiPoly.var(xs[1]), 2: spec.b * MultiPoly.var(xs[0])}
    for s in range(1, n + 1):
        want = expected.get(s, MultiPoly.const(0))
        if linear[s] != want:
            raise SpecError(
                f"linear part is not in Jordan form: dx{s} has linear part {linear[s]} at eps = 0, expected {want}")


def matrix_inverse(matrix: Sequence[Sequence[MultiPoly]]) -> List[List[MultiPoly]]:
    """Inverse through the adjugate; the determinant must be a unit monomial."""
    n = len(matrix)
    m = [[MultiPoly.coerce(x) for x in row] for row in matrix]
    if any(len(row) != n for row in m):
        raise SpecError("change-of-basis matrix must be square")
    det = determinant(m)
    if det.is_zero():
        raise SpecError("change-of-basis matrix is singular")
    if not det.is_monomial():
        raise SpecError(f"determinant {det} is not a monomial; cannot invert exactly")
    try:
        inv_det = det.inverse_monomial()
    except LaurentError as exc:
        raise SpecError(f"determinant {det} is not invertible: {exc}") from exc
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            cof = determinant(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return [[adj[i][j] * inv_det for j in range(n)] for i in range(n)]


def apply_linear_change(raw: RawSystem, matrix: Sequence[Sequence[object]], b=None,
                        N: Optional[int] = None, k: Optional[int] = None) -> SystemSpec:
    """Conjugate ``raw`` by x = M u and return the validated system in u (renamed x).

    ``b``, ``N`` and ``k`` default to the values carried by ``raw``; when
    ``raw`` carries no frequency, b is read off the new linear part.
    """
    n = raw.n
    M = [[MultiPoly.coerce(x) for x in row] for row in matrix]
    if len(M) != n:
        raise SpecError(f"matrix must be {n}x{n}")
    Minv = matrix_inverse(M)
    xs = raw.xs
    tmp = [f"__u{i}" for i in range(1, n + 1)]
    sub = {}
    for i in range(n):
        expr = MultiPoly.const(0)
        for j in range(n):
            expr = expr + M[i][j] * MultiPoly.var(tmp[j])
        sub[xs[i]] = expr
    fx = [f.subs(sub) for f in raw.rhs]
    rename = {tmp[i]: MultiPoly.var(xs[i]) for i in range(n)}
    rhs = []
    for i in range(n):
        acc = MultiPoly.const(0)
        for j in range(n):
            if not Minv[i][j].is_zero():
                acc = acc + Minv[i][j] * fx[j]
        rhs.append(acc.subs(rename))
    rhs = tuple(rhs)
    if b is None:
        b = raw.b
    if b is None:
        b = _linear_coefficient(rhs[1], xs[0])
    probe = RawSystem(n=n, rhs=rhs)
    if N is None:
        N = raw.N if raw.N is not None else max([2] + [sum(ex) for _, _, ex, _ in probe.terms()])
    if k is None:
        k = raw.k if raw.k is not None else max([1] + [j for _, j, _, _ in probe.terms()])
    return SystemSpec(n=n, rhs=rhs, params=raw.params, laurent=raw.laurent,
                      N=N, k=k, b=MultiPoly.coerce(b, raw.laurent))


def _linear_coefficient(f: MultiPoly, x: str) -> MultiPoly:
    out = MultiPoly.const(0)
    t = f.trimmed()
    for m, c in t.terms.items():
        exps = dict(zip(t.symbols, m))
        if exps.get(x) == 1 and exps.get("eps", 0) == 0 and all(
                exps.get(y, 0) == 0 for y in exps if y != x and (y.startswith("x") and y[1:].isdigit())):
            exps.pop(x)
            out = out + MultiPoly.monomial(exps, c, f.laurent)
    return out


def format_system(spec: SystemSpec) -> str:
    """DSL text that parses back to an equal SystemSpec."""
    lines = [f"system n={spec.n} N={spec.N} k={spec.k} b={format_poly(spec.b)}"]
    if spec.params:
        lines.append("param " + ", ".join(spec.params) + ";")
    extra = sorted(spec.laurent - DEFAULT_LAURENT)
    if extra:
        lines.append("laurent " + ", ".join(extra) + ";")
    for s, f in enumerate(spec.rhs, start=1):
        lines.append(f"dx{s} = {format_poly(f)};")
    return "\n".join(lines) + "\n"
