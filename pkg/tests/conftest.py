from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import settings, strategies as st

from zerohopf.algebra.poly import MultiPoly
from zerohopf.frontend import parse_system

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def catalog_text(name: str) -> str:
    return (resources.files("zerohopf") / "catalog" / f"{name}.sys").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def jerk():
    return parse_system(catalog_text("jerk"))


@pytest.fixture(scope="session")
def lorenz():
    return parse_system(catalog_text("lorenz"))


@pytest.fixture(scope="session")
def hyperchaotic():
    return parse_system(catalog_text("hyperchaotic"))


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_fractions = small_fractions.filter(lambda q: q != 0)


@st.composite
def polys(draw, syms=("x", "y", "z"), max_terms=4, max_deg=3):
    """Random polynomials over Q in a few symbols."""
    n = draw(st.integers(0, max_terms))
    p = MultiPoly.const(0)
    for _ in range(n):
        exps = {s: draw(st.integers(0, max_deg)) for s in syms}
        p = p + MultiPoly.monomial(exps, draw(small_fractions))
    return p


def rational_point(syms, seed_values=(Fraction(1, 3), Fraction(-2), Fraction(5, 7), Fraction(3, 2))):
    return {s: seed_values[i % len(seed_values)] for i, s in enumerate(syms)}


@pytest.fixture(scope="session")
def jerk_f2(jerk):
    from zerohopf.averaging import AveragingSession, impose_vanishing
    from zerohopf.frontend import to_standard_form
    spec = impose_vanishing(jerk, {"a1": 0, "b1": 0}, order=2)
    return AveragingSession(to_standard_form(spec, 2)).averaged(2)


# one rational point per jerk cell, and one outside both
JERK_C1 = {"beta": 2, "a2": 1, "b2": 5}
JERK_C0 = {"beta": 1, "a2": -1, "b2": -3}
JERK_OUTSIDE = {"beta": 2, "a2": -1, "b2": 0}
JERK_CELLS = {
    "C0": "[beta^2 - 3 < 0, beta^2*a2 + 2*b2 < 0, 0 < 2*beta^2*a2 - b2, 0 < beta^2*a2 - b2, beta != 0]",
    "C1": "[0 < beta^2 - 3, 0 < beta^2*a2 + 2*b2, 0 < 2*beta^2*a2 - b2, beta^2*a2 - b2 < 0, beta != 0]",
}

# hyperchaotic sample points (beta = 1, a51 = 1/2) keyed by the sign cell they lie in
HYPER_POINTS = {
    "C4": (-2, -3, 1),
    "C5": (-2, 3, -1),
    "C6": (2, -3, -1),
    "C7": (2, 3, 1),
}


def hyper_point(a40, a31, a11):
    return {"beta": 1, "a51": Fraction(1, 2), "a40": a40, "a31": a31, "a11": a11}
