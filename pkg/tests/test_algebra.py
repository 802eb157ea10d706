from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zerohopf.algebra import univariate as U
from zerohopf.algebra.expr import ParseError, parse_poly
from zerohopf.algebra.interval import Interval, eval_poly
from zerohopf.algebra.poly import LaurentError, MultiPoly, format_poly
from zerohopf.algebra.ratfn import RationalFn
from zerohopf.algebra.resultant import determinant, resultant

from conftest import polys, small_fractions

x, y, z = (MultiPoly.var(s) for s in "xyz")


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polys(), polys())
def test_evaluation_is_a_homomorphism(p, q):
    pt = {"x": Fraction(2, 3), "y": Fraction(-1), "z": Fraction(5, 2)}
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys(), polys())
def test_product_rule(p, q):
    assert (p * q).diff("x") == p.diff("x") * q + p * q.diff("x")


@given(polys())
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(polys())
def test_canonical_text_is_deterministic(p):
    syms, keyed = p.sorted_terms()
    rebuilt = MultiPoly.const(0)
    for m, c in reversed(keyed):
        rebuilt = rebuilt + MultiPoly.monomial(dict(zip(syms, m)), c)
    assert format_poly(rebuilt) == format_poly(p)


def test_format_examples():
    p = parse_poly("3*x^2*y - y/2 + 1")
    assert format_poly(p) == "3*x^2*y - 1/2*y + 1"
    assert format_poly(MultiPoly.const(0)) == "0"


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_poly("x + * y")
    assert err.value.col == 5


def test_laurent_only_for_declared_symbols():
    beta = MultiPoly.var("beta")
    assert (x / beta) * beta == x
    with pytest.raises(LaurentError):
        x / y


def test_substitution_composes():
    p = parse_poly("x^2*y + 3*z")
    q = p.subs({"x": y + 1})
    assert q == parse_poly("(y+1)^2*y + 3*z")
    assert q.subs({"y": 2, "z": Fraction(1, 3)}).constant_value() == 19


def test_rational_function_from_laurent():
    beta = MultiPoly.var("beta")
    f = RationalFn.from_laurent(x / beta ** 3 - y / beta)
    assert f.denominator_exponents() == {"beta": 3}
    assert f.numerator == x - y * beta ** 2
    assert f.as_laurent() == x / beta ** 3 - y / beta


# -- univariate ----------------------------------------------------------------------

@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5, unique=True))
def test_root_isolation_matches_known_roots(roots):
    p = [Fraction(1)]
    for r in roots:
        p = U.mul(p, [Fraction(-r), Fraction(1)])
    got = U.isolate_real_roots(p)
    assert len(got) == len(roots)
    for ri, r in zip(got, sorted(roots)):
        assert ri.lo <= r <= ri.hi


@given(st.lists(small_fractions, min_size=2, max_size=7))
def test_root_isolation_agrees_with_numpy(coeffs):
    p = U.trim([Fraction(c) for c in coeffs])
    if U.degree(p) < 1:
        return
    sq = U.squarefree_part(p)
    roots = np.roots([float(c) for c in reversed(sq)])
    real = sorted(r.real for r in roots if abs(r.imag) < 1e-7)
    got = U.isolate_real_roots(sq)
    assert len(got) == len(real)
    for ri, r in zip(got, real):
        assert float(ri.lo) - 1e-6 <= r <= float(ri.hi) + 1e-6


def test_isolation_with_bounds_and_exact_roots():
    p = [Fraction(0), Fraction(-1), Fraction(0), Fraction(1)]  # x^3 - x
    got = U.isolate_real_roots(p, Fraction(0), None)
    # the search range is closed, so the root at 0 is reported exactly
    assert len(got) == 2
    assert got[0].exact and got[0].lo == 0
    assert got[1].lo < 1 < got[1].hi or got[1].lo == got[1].hi == 1


def test_squarefree_and_gcd():
    p = U.mul(U.mul([Fraction(-1), Fraction(1)], [Fraction(-1), Fraction(1)]), [Fraction(2), Fraction(1)])
    assert U.squarefree_part(p) == U.monic(U.mul([Fraction(-1), Fraction(1)], [Fraction(2), Fraction(1)]))
    assert U.gcd(p, [Fraction(-1), Fraction(1)]) == [Fraction(-1), Fraction(1)]


# -- resultants and determinants -----------------------------------------------------------

def test_resultant_of_circle_and_line():
    circle = x ** 2 + y ** 2 - 1
    line = x - y
    r = resultant(circle, line, "y")
    assert r == 2 * x ** 2 - 1


@given(polys(syms=("x", "y"), max_terms=3, max_deg=2), polys(syms=("x", "y"), max_terms=3, max_deg=2))
def test_resultant_vanishes_at_common_roots(p, q):
    # force a common root at (1, 2)
    p = p - p.subs({"x": 1, "y": 2})
    q = q - q.subs({"x": 1, "y": 2})
    if "y" not in p.free_symbols or "y" not in q.free_symbols:
        return
    r = resultant(p, q, "y")
    assert r.subs({"x": 1}).is_zero()


def test_determinant_with_laurent_entries():
    beta = MultiPoly.var("beta")
    m = [[x / beta, y], [MultiPoly.const(1), x / beta ** 2]]
    assert determinant(m) == x ** 2 / beta ** 3 - y


@given(st.lists(st.lists(small_fractions, min_size=3, max_size=3), min_size=3, max_size=3))
def test_determinant_matches_numpy(rows):
    m = [[MultiPoly.const(v) for v in r] for r in rows]
    d = determinant(m)
    expect = np.linalg.det(np.array([[float(v) for v in r] for r in rows]))
    assert abs(float(d.constant_term()) - expect) < 1e-9


# -- intervals ---------------------------------------------------------------------------

@given(polys(syms=("x", "y"), max_terms=4, max_deg=3),
       st.fractions(-2, 2, max_denominator=8), st.fractions(-2, 2, max_denominator=8))
def test_interval_evaluation_encloses_values(p, a, b):
    box = {"x": Interval(a - Fraction(1, 4), a + Fraction(1, 4)), "y": Interval(b, b + Fraction(1, 3))}
    enc = eval_poly(p, box)
    exact = eval_poly(p, box, floating=True)
    for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
        pt = {"x": box["x"].lo + t * box["x"].width, "y": box["y"].lo + t * box["y"].width}
        v = p.evaluate(pt)
        assert enc.contains(v)
        assert exact.lo <= float(v) <= exact.hi
