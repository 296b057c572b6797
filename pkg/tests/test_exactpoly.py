from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affauto.errors import DegreeCapExceeded, NotAPower, ParseError, ScalarNotDthPower
from affauto.exactpoly import (
    Polynomial,
    count_monomials,
    degree_support,
    dumps,
    graded_component,
    graded_components,
    monomials_of_degree,
    poly_dth_root,
    poly_parse,
    rational_root,
)
from conftest import polynomials


def P(text, n=2):
    return poly_parse(text, n)


def test_parse_reads_rational_coefficients():
    p = P("x1^2 - 3/2*x2^3")
    assert p.terms == {(2, 0): 1, (0, 3): Fraction(-3, 2)}


def test_parse_zero_and_repeated_factors():
    assert P("0", 3).terms == {}
    assert P("x1*x1") == P("x1^2")


def test_parse_aliases_and_parentheses():
    assert P("(x + y)^2") == P("x1^2 + 2*x1*x2 + x2^2")
    assert poly_parse("z - x*y", 3) == poly_parse("x3 - x1*x2", 3)


@pytest.mark.parametrize("text", ["x1 +", "x3", "2**x1", "x1^", "(x1", "x1 $ 2", "1/0"])
def test_parse_errors_carry_a_position(text):
    with pytest.raises(ParseError) as info:
        P(text)
    assert "position" in str(info.value)


def test_graded_components_and_support():
    p = P("x1^2 + x1*x2^3")
    assert graded_component(p, 2) == P("x1^2")
    assert graded_component(p, 4) == P("x1*x2^3")
    assert graded_component(p, 7).is_zero()
    assert degree_support(p) == {2, 4}
    assert degree_support(Polynomial.zero(2)) == set()
    assert degree_support(P("5")) == {0}


def test_monomial_enumeration_is_grlex_descending():
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(3, 4)) == count_monomials(3, 4) == 15


def test_dth_roots_from_examples():
    assert poly_dth_root(P("x1^2 + 2*x1*x2^3 + x2^6"), 2) == P("x1 + x2^3")
    assert poly_dth_root(P("x1^3"), 3) == P("x1")
    with pytest.raises(NotAPower):
        poly_dth_root(P("x1^2 + x2^2"), 2)


def test_even_root_has_positive_leading_coefficient():
    assert poly_dth_root(P("(x1 - 2*x2 + 1)^2"), 2) == P("x1 - 2*x2 + 1")
    assert poly_dth_root(P("(-x1 + x2)^4"), 4) == P("x1 - x2")


def test_odd_root_of_negative_scalar():
    assert poly_dth_root(P("-8*x1^3"), 3) == P("-2*x1")


def test_scalar_obstruction_is_reported():
    with pytest.raises(ScalarNotDthPower) as info:
        poly_dth_root(P("2*x1^2"), 2)
    assert info.value.constant == 2


def test_rational_root():
    assert rational_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert rational_root(-4, 2) is None
    assert rational_root(2, 2) is None


def test_json_is_canonical():
    p = P("x2 + x1^2 - 1/3")
    text = dumps(p.to_json())
    assert text == '{"nvars":2,"terms":[{"c":"1","e":[2,0]},{"c":"1","e":[0,1]},{"c":"-1/3","e":[0,0]}]}'
    assert Polynomial.from_json(p.to_json()) == p


def test_json_rejects_duplicates():
    with pytest.raises(ParseError):
        Polynomial.from_json({"nvars": 1, "terms": [{"c": "1", "e": [1]}, {"c": "2", "e": [1]}]})


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("AFFAUTO_MAX_DEGREE", "10")
    x = P("x1 + 1")
    with pytest.raises(DegreeCapExceeded):
        x ** 11
    with pytest.raises(DegreeCapExceeded):
        P("x1^4").substitute([P("x1^3"), P("x2")])


def test_exact_divide():
    assert P("x1^2 - x2^2").exact_divide(P("x1 - x2")) == P("x1 + x2")
    with pytest.raises(NotAPower):
        P("x1^2 + 1").exact_divide(P("x1 - x2"))


def test_evaluate_and_substitute():
    p = P("x1^2*x2 - 3")
    assert p.evaluate([Fraction(1, 2), 4]) == -2
    assert p.substitute([P("x2"), P("x1")]) == P("x2^2*x1 - 3")


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(2)


@settings(max_examples=60, deadline=None)
@given(polynomials(nvars=3))
def test_graded_components_sum_to_the_polynomial(p):
    total = Polynomial.zero(3)
    for piece in graded_components(p):
        assert piece.part.is_zero() or piece.part.is_homogeneous()
        total = total + piece.part
    assert total == p


@settings(max_examples=60, deadline=None)
@given(polynomials(nvars=3))
def test_parse_print_round_trip(p):
    assert poly_parse(p.to_str(), 3) == p
    assert Polynomial.from_json(p.to_json()) == p


@settings(max_examples=40, deadline=None)
@given(polynomials(max_degree=2), st.integers(1, 4))
def test_dth_root_of_a_power(q, d):
    if q.is_zero():
        return
    r = poly_dth_root(q ** d, d)
    assert r ** d == q ** d
    assert r == q or (d % 2 == 0 and r == -q)


@settings(max_examples=40, deadline=None)
@given(polynomials(max_degree=2), st.integers(2, 3))
def test_any_returned_root_is_exact(p, d):
    if p.is_zero():
        return
    try:
        q = poly_dth_root(p, d)
    except (NotAPower, ScalarNotDthPower):
        return
    assert q ** d == p
