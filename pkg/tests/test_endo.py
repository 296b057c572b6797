from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affauto.endo import (
    Affine,
    AutoWord,
    PolyMap,
    Triangular,
    compose,
    invert,
    jacobian,
    pullback,
    word_eval,
)
from affauto.errors import DimensionMismatch, NotInvertible, ParseError, Unsupported
from affauto.exactpoly import poly_parse
from conftest import polynomials


def M(text, n=2):
    return PolyMap.parse(text, n)


def P(text, n=2):
    return poly_parse(text, n)


SWAP = Affine(((0, 1), (1, 0)), (0, 0))


def test_compose_examples():
    assert compose(M("x1 + x2^2, x2"), M("x1 - x2^2, x2")).is_identity()
    assert compose(M("x2, x1"), M("x2, x1")).is_identity()
    assert compose(M("2*x1, x2"), M("x1 + x2, x2")) == M("2*x1 + 2*x2, x2")


def test_compose_applies_the_right_map_first():
    # (x1 + x2^2, x2) after the swap
    assert compose(M("x1 + x2^2, x2"), M("x2, x1")) == M("x2 + x1^2, x1")


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(M("x1, x2"), PolyMap.parse("x1, x2, x3", 3))


def test_pullback_examples():
    assert pullback(M("x1 + x2^3, x2"), P("x1^2")) == P("x1^2 + 2*x1*x2^3 + x2^6")
    p = P("x1^3 - x2")
    assert pullback(PolyMap.identity(2), p) == p
    assert pullback(M("x2, x1"), P("x1*x2")) == P("x1*x2")


def test_jacobian_examples():
    assert jacobian(M("x1 + x2^2, x2")).det == P("1")
    assert jacobian(M("x2, x1")).det == P("-1")
    assert jacobian(M("x1^2, x2")).det == P("2*x1")


def test_jacobian_three_variables():
    f = PolyMap.parse("x1 + x2*x3, 2*x2 + x3^2, -x3", 3)
    assert jacobian(f).det == poly_parse("-2", 3)


def test_word_eval_examples():
    t = Triangular(0, 1, P("x2^2"))
    assert word_eval(AutoWord(2, (t,))) == M("x1 + x2^2, x2")
    assert word_eval(AutoWord(2, ())).is_identity()
    assert word_eval(AutoWord(2, (SWAP, t))) == M("x2, x1 + x2^2")


def test_invert_examples():
    assert invert(M("x1 + x2^3, x2")) == M("x1 - x2^3, x2")
    assert invert(M("x2, x1 + x2^2")) == M("x2 - x1^2, x1")
    with pytest.raises(NotInvertible):
        invert(M("x1^2, x2"))


def test_invert_affine_in_three_variables():
    f = PolyMap.parse("x2 + 1, x1 - x3, 2*x3", 3)
    g = invert(f)
    assert compose(f, g).is_identity() and compose(g, f).is_identity()


def test_invert_needs_a_certificate_in_dimension_three():
    f = PolyMap.parse("x1 + x2^2, x2 + x3^3, x3", 3)
    with pytest.raises(Unsupported):
        invert(f)
    g = PolyMap.parse("x1 - (x2 - x3^3)^2, x2 - x3^3, x3", 3)
    assert invert(f, witness=g) == g
    with pytest.raises(NotInvertible):
        invert(f, witness=PolyMap.identity(3))


def test_invert_word():
    w = AutoWord(3, (Triangular(0, 2, poly_parse("x2*x3", 3)), Affine(((0, 1, 0), (0, 0, 1), (1, 0, 0)), (1, 0, 0))))
    g = invert(w)
    assert compose(word_eval(w), g).is_identity()


def test_letters_reject_bad_data():
    with pytest.raises(NotInvertible):
        Affine(((1, 1), (1, 1)), (0, 0))
    with pytest.raises(ValueError):
        Triangular(0, 1, P("x1*x2"))
    with pytest.raises(NotInvertible):
        Triangular(0, 0, P("x2"))


def test_json_round_trip():
    f = M("x1 + 1/2*x2^2, -x2")
    assert PolyMap.from_json(f.to_json()) == f
    w = AutoWord(2, (SWAP, Triangular(0, Fraction(3, 2), P("x2^3 - 1"))))
    assert AutoWord.from_json(w.to_json()) == w
    with pytest.raises(ParseError):
        AutoWord.from_json({"nvars": 2, "letters": [{"type": "shear"}]})


maps2 = st.tuples(polynomials(max_degree=2, max_terms=3), polynomials(max_degree=2, max_terms=3)).map(
    lambda c: PolyMap(2, c)
)


@settings(max_examples=40, deadline=None)
@given(maps2, maps2)
def test_chain_rule(f, g):
    lhs = jacobian(compose(f, g)).det
    rhs = pullback(g, jacobian(f).det) * jacobian(g).det
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(maps2, maps2, polynomials(max_degree=2))
def test_pullback_is_contravariant(f, g, p):
    assert pullback(compose(f, g), p) == pullback(g, pullback(f, p))


triangulars = st.builds(
    lambda i, a, p: Triangular(i, a, p.substitute([p.__class__.zero(2), p.__class__.var(1, 2)]) if i == 0
                               else p.substitute([p.__class__.var(0, 2), p.__class__.zero(2)])),
    st.integers(0, 1),
    st.sampled_from([1, -1, 2]),
    polynomials(max_degree=3, max_terms=2),
)
# at most three cubic letters per word keeps concatenations under the degree cap
words = st.lists(st.one_of(triangulars, st.just(SWAP)), max_size=3).map(lambda ls: AutoWord(2, tuple(ls)))


@settings(max_examples=40, deadline=None)
@given(words, words)
def test_word_eval_respects_concatenation(w1, w2):
    assert word_eval(w1 + w2) == compose(word_eval(w1), word_eval(w2))


@settings(max_examples=40, deadline=None)
@given(words)
def test_inverse_composes_to_identity(w):
    f = word_eval(w)
    assert jacobian(f).det.is_constant()
    g = invert(f)
    assert compose(f, g).is_identity() and compose(g, f).is_identity()
