import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from zerohopf.algebra.poly import MultiPoly
from zerohopf.trig import (PI, EpsSeries, QuasiTrigPoly, antiderivative, definite_over_period,
                           eps_invert_unit, evaluate_at_period, format_trig)

from conftest import nonzero_fractions, small_fractions


@st.composite
def trig_polys(draw, max_terms=4, max_power=2, max_harm=3, symbolic=False):
    q = QuasiTrigPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        p = draw(st.integers(0, max_power))
        h = draw(st.integers(-max_harm, max_harm))
        c = MultiPoly.const(draw(small_fractions))
        if symbolic and draw(st.booleans()):
            c = c * MultiPoly.var("a")
        q = q + QuasiTrigPoly({(p, h): c})
    return q


def numeric(q, theta, a=0.7):
    return q.evaluate(theta, {"a": a, "pi": math.pi})


@given(trig_polys(symbolic=True))
def test_canonical_form_is_idempotent(q):
    assert QuasiTrigPoly(q.terms) == q
    assert q * QuasiTrigPoly.const(1) == q
    assert q + QuasiTrigPoly() == q
    assert format_trig(QuasiTrigPoly(q.terms)) == format_trig(q)


@given(trig_polys(), trig_polys(), st.floats(0, 2 * math.pi))
def test_product_linearisation_is_exact(p, q, t):
    assert abs(numeric(p * q, t) - numeric(p, t) * numeric(q, t)) <= 1e-9 * (1 + abs(numeric(p, t) * numeric(q, t)))


def test_product_to_sum_identities():
    c, s = QuasiTrigPoly.cos, QuasiTrigPoly.sin
    half = Fraction(1, 2)
    assert c(1) * c(1) == QuasiTrigPoly.const(half) + c(2, half)
    assert s(1) * s(1) == QuasiTrigPoly.const(half) - c(2, half)
    assert s(1) * c(2) == s(3, half) - s(1, half)
    assert c(1) ** 2 + s(1) ** 2 == QuasiTrigPoly.const(1)


@given(trig_polys(symbolic=True))
def test_antiderivative_inverts_derivative(q):
    g = antiderivative(q)
    assert g.dtheta() == q
    assert g.at_zero().is_zero()


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
@given(trig_polys())
def test_period_integral_matches_quadrature(q):
    exact = float(definite_over_period(q).evaluate({"pi": math.pi}))
    num, _ = quad(lambda t: numeric(q, t), 0, 2 * math.pi, limit=200, epsabs=1e-11, epsrel=1e-11)
    assert abs(exact - num) <= 1e-9 * max(1.0, abs(num))


def test_period_integrals_keep_pi_symbolic():
    assert definite_over_period(QuasiTrigPoly.cos(1) ** 2) == PI
    assert definite_over_period(QuasiTrigPoly.theta()) == 2 * PI ** 2
    assert definite_over_period(QuasiTrigPoly.cos(3)).is_zero()
    # int theta cos(theta) over a period is 0, int theta sin(theta) is -2 pi
    assert definite_over_period(QuasiTrigPoly({(1, 1): 1})).is_zero()
    assert definite_over_period(QuasiTrigPoly({(1, -1): 1})) == -2 * PI
    assert evaluate_at_period(QuasiTrigPoly.sin(2)).is_zero()


@given(st.lists(trig_polys(max_power=0), min_size=1, max_size=3), nonzero_fractions,
       st.integers(1, 4))
def test_eps_inverse_times_series_is_one(tail, lead, order):
    b = MultiPoly.var("b")
    d = EpsSeries([QuasiTrigPoly.const(b * lead)] + tail, order)
    inv = eps_invert_unit(d)
    prod = d * inv
    assert prod.coeffs[0] == QuasiTrigPoly.const(1)
    assert all(c.is_zero() for c in prod.coeffs[1:])


def test_eps_inverse_requires_theta_free_leading_term():
    with pytest.raises(ValueError):
        eps_invert_unit(EpsSeries([QuasiTrigPoly.cos(1)], 2))
    with pytest.raises(ZeroDivisionError):
        eps_invert_unit(EpsSeries([QuasiTrigPoly()], 2))


def test_series_truncation():
    e = EpsSeries([MultiPoly.const(1), MultiPoly.const(1)], 2)
    sq = e * e
    assert [c.constant_term() for c in sq.coeffs] == [1, 2, 1]
    cube = sq * e
    assert [c.constant_term() for c in cube.coeffs] == [1, 3, 3]
