import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from zerohopf.algebra.expr import parse_poly
from zerohopf.algebra.poly import MultiPoly
from zerohopf.averaging import (AveragingSession, VanishingError, composition_tuples, formula_text,
                                frechet_apply, frechet_apply_naive, impose_vanishing, partial_bell,
                                periodic_solution_approx, template_terms)
from zerohopf.averaging.bell import bell_numbers_check
from zerohopf.frontend import general_system, to_standard_form
from zerohopf.trig import QuasiTrigPoly

from conftest import small_fractions


# -- Bell polynomials ----------------------------------------------------------------------

def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@pytest.mark.parametrize("l, bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_bell_numbers(l, bell):
    assert bell_numbers_check(l) == bell


@given(st.integers(1, 8), st.integers(1, 8))
def test_partial_bell_counts_set_partitions(l, m):
    if m > l:
        with pytest.raises(ValueError):
            partial_bell(l, m)
        return
    terms = partial_bell(l, m)
    assert sum(t.coefficient for t in terms) == stirling2(l, m)
    for t in terms:
        assert t.degree == m and t.weight == l


@given(st.integers(1, 7))
def test_partial_bell_with_unit_arguments_gives_lah_like_identity(l):
    # B_{l,m}(1!, 2!, 3!, ...) are the unsigned Lah numbers
    for m in range(1, l + 1):
        total = sum(t.coefficient * _prod_fact(t.multiplicities) for t in partial_bell(l, m))
        assert total == comb(l - 1, m - 1) * Fraction(factorial(l), factorial(m))


def _prod_fact(mult):
    out = 1
    for j, b in enumerate(mult, 1):
        out *= factorial(j) ** b
    return out


def test_partial_bell_small_cases():
    assert {(t.multiplicities, t.coefficient) for t in partial_bell(4, 2)} == {((1, 0, 1), 4), ((0, 2, 0), 3)}


@given(st.integers(1, 6))
def test_composition_weights(l):
    # sum over tuples of weight * prod j!^b_j * (number of orderings) reproduces the Bell sums
    for tup, w in composition_tuples(l):
        assert sum((j + 1) * b for j, b in enumerate(tup)) == l
        expect = Fraction(1)
        for j, b in enumerate(tup, 1):
            expect /= factorial(b) * factorial(j) ** b
        assert w == expect


# -- multilinear contractions ---------------------------------------------------------------------

@st.composite
def vector_field(draw, n=2):
    z = [f"z{i}" for i in range(1, n + 1)]
    F = []
    for _ in range(n):
        p = MultiPoly.const(0)
        for _ in range(draw(st.integers(1, 3))):
            exps = {s: draw(st.integers(0, 3)) for s in z}
            p = p + MultiPoly.monomial(exps, draw(small_fractions))
        F.append(QuasiTrigPoly.const(p) * QuasiTrigPoly.cos(draw(st.integers(0, 2))))
    return z, F


@given(vector_field(), st.integers(1, 3), st.data())
def test_frechet_contraction_matches_naive_sum(zF, L, data):
    z, F = zF
    ys = []
    for _ in range(L):
        ys.append([QuasiTrigPoly.const(data.draw(small_fractions)) * QuasiTrigPoly.sin(data.draw(st.integers(1, 2)))
                   for _ in z])
    assert frechet_apply(F, z, ys) == frechet_apply_naive(F, z, ys)


# -- averaged functions --------------------------------------------------------------------------

def test_jerk_first_order(jerk):
    f1 = AveragingSession(to_standard_form(jerk, 1)).averaged(1)
    r1, r3 = f1.laurent()
    assert r1 == parse_poly("-pi*R*(beta^2*a1 - b1)/beta^3")
    assert r3 == parse_poly("-2*b1*pi*X3/beta^3")


def test_jerk_first_order_does_not_vanish_without_constraints(jerk):
    with pytest.raises(VanishingError) as err:
        impose_vanishing(jerk, {}, order=2)
    assert (1, 1) in err.value.survivors
    with pytest.raises(VanishingError) as err:
        impose_vanishing(jerk, {"a1": 0}, order=2)
    assert "b1" in err.value.survivors[(1, 1)].free_symbols


def test_jerk_second_order_closed_form(jerk):
    spec = impose_vanishing(jerk, {"a1": 0, "b1": 0}, order=2)
    f2 = AveragingSession(to_standard_form(spec, 2)).averaged(2)
    r1, r3 = f2.laurent()
    fbar21 = parse_poly("(beta^2 - 3)*R^2 + 4*beta^4*a2 - 12*beta^2*X3^2 - 4*beta^2*b2")
    fbar23 = parse_poly("X3*((beta^2 - 3)*R^2 - 2*beta^2*X3^2 - 2*beta^2*b2)")
    assert r1 == parse_poly("-pi*R/(4*beta^5)") * fbar21
    assert r3 == parse_poly("pi/beta^5") * fbar23


def _random_instance(seed, n=3, k=2):
    rng = random.Random(seed)

    def coeff(name, s, j, ex):
        if rng.random() < 0.4:
            return 0
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    return general_system(n, 2, k, b=Fraction(rng.randint(1, 3)), coefficient=coeff)


@pytest.mark.parametrize("seed", range(4))
def test_bell_route_equals_tuple_route(seed):
    spec = _random_instance(seed)
    sf = to_standard_form(spec, 2)
    a = AveragingSession(sf, route="bell")
    b = AveragingSession(sf, route="tuples")
    for i in (1, 2):
        assert a.y(i) == b.y(i)
        assert a.averaged(i).laurent() == b.averaged(i).laurent()


def test_first_order_is_the_period_average(jerk):
    from zerohopf.trig import definite_over_period
    sf = to_standard_form(jerk, 1)
    f1 = AveragingSession(sf).averaged(1)
    for lab, p in zip(f1.labels(), f1.laurent()):
        assert p == definite_over_period(sf.component(1, lab))


def test_first_order_scales_linearly_with_the_perturbation():
    # doubling the eps^1 terms doubles their share of f1; the unperturbed quadratic share is unchanged
    base = _random_instance(11, k=1)
    twice = type(base)(n=base.n, rhs=tuple(f.subs({"eps": MultiPoly.var("eps") * 2}) for f in base.rhs),
                       params=base.params, N=base.N, k=base.k, b=base.b)
    f_base = AveragingSession(to_standard_form(base, 1)).averaged(1).laurent()
    f_twice = AveragingSession(to_standard_form(twice, 1)).averaged(1).laurent()
    quad_part = AveragingSession(to_standard_form(_without_eps(base), 1)).averaged(1).laurent()
    for a, b, q in zip(f_base, f_twice, quad_part):
        assert b - q == (a - q).scale(2)


def _without_eps(spec):
    rhs = tuple(f.subs({"eps": 0}) for f in spec.rhs)
    return type(spec)(n=spec.n, rhs=rhs, params=spec.params, N=spec.N, k=spec.k, b=spec.b)


def test_periodic_solution_is_anchored_at_the_zero(jerk):
    sf = to_standard_form(jerk, 1)
    session = AveragingSession(sf)
    zstar = {"R": Fraction(1), "X3": Fraction(1, 2)}
    vals = {"beta": 2, "a1": 1, "b1": 1, "c1": 0, "a2": 0, "b2": 0, "c2": 0}
    approx = periodic_solution_approx([session.y(1)], zstar, 1, sf.eta, vals)
    assert len(approx) == 2
    assert approx[0].coeffs[0].at_zero() == MultiPoly.const(1)
    assert approx[0].coeffs[1].at_zero().is_zero()


# -- templates ------------------------------------------------------------------------------

def test_template_first_order():
    text, counts = formula_text(1, 2)
    assert text.splitlines() == ["y[1][1](t) = int_0^t ( F[1][1] ) dtheta",
                                 "y[1][2](t) = int_0^t ( F[1][2] ) dtheta"]


def test_template_third_order_coefficients():
    assert [int(t.coefficient) for t in template_terms(2, 2)] == [2, 2, 2]
    assert [int(t.coefficient) for t in template_terms(3, 2)] == [6, 6, 6, 3, 3, 3, 6, 3]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_second_order_template_has_one_plus_n_terms(n):
    assert len(template_terms(2, n)) == 1 + n


def test_template_counts_are_monotone():
    counts = [[len(template_terms(k, n)) for n in range(2, 6)] for k in range(1, 5)]
    for row in counts:
        assert row == sorted(row)
    for col in zip(*counts):
        assert list(col) == sorted(col)
