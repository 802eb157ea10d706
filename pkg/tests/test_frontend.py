import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zerohopf.algebra.expr import parse_poly
from zerohopf.algebra.poly import MultiPoly
from zerohopf.frontend import (ParseError, SpecError, SystemSpec, format_system, general_system,
                               parse_raw_system, parse_system, psi, to_standard_form)
from zerohopf.trig import QuasiTrigPoly

from conftest import catalog_text, small_fractions

# the jerk system after the change (x, y, z) -> (u, v, w), with u, v, w renamed x1, x2, x3
JERK_UVW = [
    "-beta*x2",
    "beta*x1 + 3*x2^2*x3/beta^3 + x2^3/beta^4 - x1^2*x2/beta^2 + 3*x2*x3^2/beta^2 - x1^2*x3/beta"
    " + x3^3/beta + eps*((-a1 + b1/beta^2)*x2 - x1*c1/beta + x3*b1/beta)"
    " + eps^2*((b2/beta^2 - a2)*x2 - x1*c2/beta + x3*b2/beta)",
    "-x2^3/beta^5 + x1^2*x2/beta^3 - x3^3/beta^2 - 3*x2*x3^2/beta^3 + x1^2*x3/beta^2 - 3*x2^2*x3/beta^4"
    " + eps*((a1/beta - b1/beta^3)*x2 + x1*c1/beta^2 - x3*b1/beta^2)"
    " + eps^2*((-b2/beta^3 + a2/beta)*x2 + x1*c2/beta^2 - x3*b2/beta^2)",
]


def test_jerk_change_of_variables_matches_reference_system(jerk):
    for got, text in zip(jerk.rhs, JERK_UVW):
        assert got == parse_poly(text)
    assert jerk.b == MultiPoly.var("beta")
    assert (jerk.n, jerk.N, jerk.k) == (3, 3, 2)


@pytest.mark.parametrize("name", ["jerk", "lorenz", "hyperchaotic"])
def test_catalog_round_trip(name):
    spec = parse_system(catalog_text(name))
    again = parse_system(format_system(spec))
    assert again == spec


def test_parse_simple_system():
    spec = parse_system("system n=3 N=2 k=1 b=2\n"
                        "param a;\n"
                        "dx1 = -2*x2 + x1^2 + eps*a*x1;\n"
                        "dx2 = 2*x1;\n"
                        "dx3 = x1*x3;\n")
    assert spec.params == ("a",)
    assert spec.b == MultiPoly.const(2)
    table = spec.coefficient_table()
    assert table[(1, 1, (1, 0, 0))] == MultiPoly.var("a")
    assert table[(3, 0, (1, 0, 1))] == MultiPoly.const(1)


@pytest.mark.parametrize("text, fragment", [
    ("dx1 = x2;", "must start with a 'system' header"),
    ("system n=3 b=1\ndx1 = -x2\n", "missing ';'"),
    ("system n=3 b=1\ndx4 = 0;", "unknown equation"),
    ("system n=3 b=1\nparam eps;", "reserved"),
    ("system n=3 b=1\nparam a, a;", "declared twice"),
    ("system n=3 b=1\ndx1 = -x2 + q*x1^2;", "q"),
    ("system n=3 b=1 k=1\nchange x1 = u1^2, x2 = u2, x3 = u3;\ndx1 = -x2;\ndx2 = x1;", "not linear"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_system(text)
    assert fragment in str(err.value)


@pytest.mark.parametrize("text, fragment", [
    ("system n=2 b=1\ndx1 = -x2;\ndx2 = x1;", "must be >= 3"),
    ("system n=3 b=1\ndx1 = x2;\ndx2 = x1;", "linear part"),
    ("system n=3 N=2 b=1\ndx1 = -x2 + x1^3;\ndx2 = x1;", "degree"),
    ("system n=3 k=1 b=1\ndx1 = -x2 + eps^2*x1;\ndx2 = x1;", "eps^2"),
    ("system n=3 b=1\ndx1 = -x2 + 1;\ndx2 = x1;", "degree 0"),
])
def test_validation_errors(text, fragment):
    with pytest.raises(SpecError) as err:
        parse_system(text)
    assert fragment in str(err.value)


def test_truncate_statement_drops_high_eps_powers():
    text = "system n=3 N=2 k=1 b=1\nparam a;\ntruncate;\ndx1 = -x2 + (eps*a)^3*x1 + eps*x1;\ndx2 = x1;\n"
    spec = parse_system(text)
    assert spec.rhs[0] == parse_poly("-x2 + eps*x1")
    raw = parse_raw_system("system n=3 b=1\ndx1 = x2;")
    assert raw.rhs[0] == MultiPoly.var("x2")


def test_psi_typo_switch():
    R2 = MultiPoly.var("R") ** 2
    cos = QuasiTrigPoly.cos(1)
    sin = QuasiTrigPoly.sin(1)
    assert psi((1, 1, 0)) == (cos * sin).scale(R2)
    assert psi((1, 1, 0), literal=True) == (cos * cos).scale(R2)


# -- standard form against a direct numerical evaluation ---------------------------------------

def _direct_dR_dtheta(spec, eps, theta, R, X, values):
    """dR/dtheta and dXs/dtheta straight from the rescaled polar equations."""
    env = dict(values)
    env["eps"] = eps
    X1, X2 = R * math.cos(theta), R * math.sin(theta)
    coords = [X1, X2] + list(X)
    for i, c in enumerate(coords, 1):
        env[f"x{i}"] = eps * c
    G = [float(f.evaluate(env)) / eps for f in spec.rhs]
    dtheta = (math.cos(theta) * G[1] - math.sin(theta) * G[0]) / R
    dR = math.cos(theta) * G[0] + math.sin(theta) * G[1]
    return [dR / dtheta] + [g / dtheta for g in G[2:]]


def _series_value(sf, eps, theta, R, X, values):
    env = dict(values)
    env["R"] = R
    for s, v in zip(range(3, sf.n + 1), X):
        env[f"X{s}"] = v
    out = []
    for c in [1] + list(range(3, sf.n + 1)):
        out.append(sum(eps ** j * sf.component(j, c).evaluate(theta, env) for j in range(1, sf.k + 1)))
    return out


@pytest.mark.parametrize("theta", [0.3, 1.9, 4.4])
def test_standard_form_matches_polar_equations(jerk, theta):
    values = {"beta": 1.3, "a1": 0.4, "a2": -0.7, "b1": 0.2, "b2": 1.1, "c1": -0.5, "c2": 0.9}
    sf = to_standard_form(jerk, 2)
    R, X = 0.8, [0.35]
    errs = []
    for eps in (1e-2, 5e-3):
        exact = _direct_dR_dtheta(jerk, eps, theta, R, X, values)
        approx = _series_value(sf, eps, theta, R, X, values)
        errs.append(max(abs(a - b) for a, b in zip(exact, approx)))
    # the remainder is O(eps^3): halving eps divides it by about 8
    assert errs[0] < 1e-4
    assert 5 < errs[0] / errs[1] < 11


@given(st.integers(3, 4), small_fractions.filter(lambda q: q != 0))
def test_general_system_is_valid(n, b):
    spec = general_system(n, 2, 1, b=b)
    assert isinstance(spec, SystemSpec)
    names = set(spec.params)
    assert "a_e1_1_0" + "_0" * (n - 2) in names
    assert f"c_2_0{'_0' * (n - 2)}_3" in names
    again = parse_system(format_system(spec))
    assert again == spec


def test_general_system_counts_terms():
    spec = general_system(3, 2, 1)
    # b, then per equation 6 quadratic unperturbed + 3 linear and 6 quadratic eps terms
    assert spec.params[0] == "b"
    assert len(spec.params) == 1 + 3 * (6 + 3 + 6)


def test_substitution_removes_parameters(jerk):
    s = jerk.subs({"a1": 0, "b1": Fraction(1, 2)})
    assert "a1" not in s.params and "b1" not in s.params
    assert "a1" not in s.rhs[1].free_symbols
