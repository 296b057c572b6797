from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affauto import _pykernels, kernels

ckernels = pytest.importorskip("affauto._ckernels")

exponents = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=9).filter(bool)
term_maps = st.dictionaries(exponents, coeffs, max_size=8)


@settings(max_examples=100, deadline=None)
@given(term_maps, term_maps)
def test_multiplication_kernels_agree(a, b):
    assert ckernels.mul_terms(a, b, 3) == _pykernels.mul_terms(a, b, 3)


def test_multiplication_handles_huge_coefficients():
    a = {(1, 0): Fraction(10**30, 7), (0, 1): Fraction(-(10**25))}
    b = {(1, 1): Fraction(3 * 10**20), (0, 0): Fraction(1, 10**12)}
    assert ckernels.mul_terms(a, b, 2) == _pykernels.mul_terms(a, b, 2)


def test_multiplication_falls_back_for_many_variables():
    a = {tuple(range(10)): Fraction(2)}
    assert ckernels.mul_terms(a, a, 10) == {tuple(2 * i for i in range(10)): Fraction(4)}


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 60), max_size=5), st.integers(0, 400))
def test_closure_kernels_agree(gens, bound):
    assert ckernels.additive_closure(gens, bound) == _pykernels.additive_closure(gens, bound)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")
