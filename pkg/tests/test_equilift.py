import random
from math import gcd

import pytest

from affauto.endo import AutoWord, PolyMap, compose, invert, word_eval
from affauto.equilift import (
    MuScalar,
    QuotientAuto,
    compose_quotient,
    descend,
    exponent_normal_form,
    identity_quotient,
    is_mu_d_equivariant,
    lift,
    phi_d_diagonal_kernel,
    quadratic_relations_hold,
    sl_scalar_kernel,
)
from affauto.errors import NotEquivariant, NotInvertible, NotLiftable, ParseError
from affauto.exactpoly import poly_parse
from affauto.verify import random_equivariant_word


def M(text, n=2):
    return PolyMap.parse(text, n)


def P(text, n=2):
    return poly_parse(text, n)


def test_equivariance_examples():
    assert is_mu_d_equivariant(M("x1 + x2^3, x2"), 2)
    assert not is_mu_d_equivariant(M("x1 + x2^2, x2"), 2)
    assert all(is_mu_d_equivariant(PolyMap.identity(3), d) for d in range(1, 6))


def test_descend_example():
    q = descend(M("x1 + x2^3, x2"), 2)
    # u = x1^2, v = x1 x2, w = x2^2: u -> u + 2vw + w^3, v -> v + w^2, w -> w
    assert q.images[(2, 0)] == P("x1^2 + 2*x1*x2^3 + x2^6")
    assert q.images[(1, 1)] == P("x1*x2 + x2^4")
    assert q.images[(0, 2)] == P("x2^2")


def test_descend_identity_and_kernel_element():
    assert descend(PolyMap.identity(2), 3).is_identity()
    assert descend(M("-x1, -x2"), 2).is_identity()


def test_descend_errors():
    with pytest.raises(NotEquivariant):
        descend(M("x1 + x2^2, x2"), 2)
    with pytest.raises(NotInvertible):
        descend(PolyMap.parse("x1 + x2^3, x2 + x3^3, x3", 3), 2)


def test_descend_with_witness_in_three_variables():
    f = PolyMap.parse("x1 + x2^3, x2 + x3^3, x3", 3)
    g = PolyMap.parse("x1 - (x2 - x3^3)^3, x2 - x3^3, x3", 3)
    q = descend(f, 2, witness=g)
    assert lift(q).normal_form() == exponent_normal_form(f, MuScalar(2, (0, 0, 0)))


def test_lift_round_trip_example():
    f = M("x1 + x2^3, x2")
    res = lift(descend(f, 2))
    assert res.rational_map == f
    assert res.twist == MuScalar(2, (0, 0))
    assert res.ambiguity == (MuScalar(2, (0, 0)), MuScalar(2, (1, 1)))


def test_lift_identity_has_mu_d_ambiguity():
    res = lift(identity_quotient(3, 2))
    assert res.rational_map.is_identity()
    assert len(res.ambiguity) == 3


def test_lift_recovers_a_sign_twist():
    res = lift(descend(M("-x1, x2"), 2))
    assert res.twist.exponents == (0, 1)
    assert res.exact_map() == M("x1, -x2")


def test_lift_detects_non_rational_twist():
    # (x1, xi x2) with xi a primitive cube root of unity descends rationally
    images = {
        (3, 0): P("x1^3"),
        (2, 1): P("x1^2*x2"),
        (1, 2): P("x1*x2^2"),
        (0, 3): P("x2^3"),
    }
    res = lift(QuotientAuto(3, 2, images))
    assert res.twist.exponents == (0, 0)


def test_lift_rejects_relation_violations():
    images = {(2, 0): P("x1*x2"), (1, 1): P("x1*x2"), (0, 2): P("x2^2")}
    q = QuotientAuto(2, 2, images)
    assert not quadratic_relations_hold(q)
    with pytest.raises(NotLiftable):
        lift(q)


def test_lift_rejects_non_powers():
    images = {(2, 0): P("x1^2 + x2^2"), (1, 1): P("x1*x2"), (0, 2): P("x2^2")}
    with pytest.raises(NotLiftable):
        lift(QuotientAuto(2, 2, images, provenance=M("x1, x2")))


def test_quotient_images_must_be_invariant():
    with pytest.raises(NotEquivariant):
        QuotientAuto(2, 2, {(2, 0): P("x1"), (1, 1): P("x1*x2"), (0, 2): P("x2^2")})


def test_kernel_examples():
    assert phi_d_diagonal_kernel(2, 2) == [MuScalar(2, (0, 0)), MuScalar(2, (1, 1))]
    assert phi_d_diagonal_kernel(1, 4) == [MuScalar(1, (0, 0, 0, 0))]
    assert len(phi_d_diagonal_kernel(3, 3)) == 3
    assert sl_scalar_kernel(2, 4) == 2
    assert sl_scalar_kernel(3, 2) == 1
    assert sl_scalar_kernel(6, 4) == 2


def test_kernel_elements_fix_generators():
    for d in range(1, 5):
        for m in phi_d_diagonal_kernel(d, 3):
            assert m.is_scalar()
    assert all(sl_scalar_kernel(n, d) == gcd(n, d) for n in range(2, 8) for d in range(1, 8))


def test_quotient_json_round_trip():
    q = descend(M("x1 + x2^3, x2"), 2)
    assert QuotientAuto.from_json(q.to_json()) == q
    with pytest.raises(ParseError):
        QuotientAuto.from_json({"d": 2, "n": 2, "images": {"2*x1^2": {"nvars": 2, "terms": []}}})


@pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_descend_is_a_homomorphism(d, n):
    rng = random.Random(d * 10 + n)
    for _ in range(3):
        w1 = random_equivariant_word(rng, d, n, max_degree=5)
        w2 = random_equivariant_word(rng, d, n, max_degree=5)
        lhs = descend(w1 + w2, d)
        rhs = compose_quotient(descend(w1, d), descend(w2, d))
        assert lhs == rhs


@pytest.mark.parametrize("d,n", [(2, 2), (3, 3), (4, 2)])
def test_equivariant_maps_closed_under_composition_and_inverse(d, n):
    rng = random.Random(d + n)
    for _ in range(3):
        w1, w2 = (random_equivariant_word(rng, d, n, max_degree=5) for _ in range(2))
        f, g = word_eval(w1), word_eval(w2)
        assert is_mu_d_equivariant(compose(f, g), d)
        assert is_mu_d_equivariant(invert(w1), d)


def test_round_trip_on_random_words():
    rng = random.Random(3)
    for _ in range(15):
        d, n = rng.choice((2, 3, 4)), rng.choice((2, 3))
        w = random_equivariant_word(rng, d, n)
        res = lift(descend(w, d))
        assert descend(AutoWord(n, ()), d).is_identity()
        assert res.normal_form() == exponent_normal_form(word_eval(w), MuScalar(d, (0,) * n))
