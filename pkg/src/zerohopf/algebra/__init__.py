"""Exact rational and Laurent-polynomial arithmetic."""
from .poly import DEFAULT_LAURENT, LaurentError, MultiPoly, Rational, format_poly, symbol_key
from .ratfn import RationalFn
from .expr import ParseError, parse_poly
from .resultant import determinant, exact_divide, resultant
from .univariate import RootInterval, isolate_real_roots
from .interval import Interval, eval_poly

__all__ = [
    "DEFAULT_LAURENT", "LaurentError", "MultiPoly", "Rational", "RationalFn", "format_poly",
    "symbol_key", "ParseError", "parse_poly", "determinant", "exact_divide", "resultant",
    "RootInterval", "isolate_real_roots", "Interval", "eval_poly", "poly_arith", "poly_diff",
    "poly_subs",
]


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(p: MultiPoly, sym: str) -> MultiPoly:
    if sym not in p.free_symbols:
        raise KeyError(f"{sym!r} is not an indeterminate of {p}")
    return p.diff(sym)


def poly_subs(p: MultiPoly, bindings) -> MultiPoly:
    return p.subs(bindings)
