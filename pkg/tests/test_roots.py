import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affauto.equilift import is_mu_d_equivariant
from affauto.errors import DimensionMismatch, NotDescendable
from affauto.exactpoly import Polynomial
from affauto.roots import (
    Character,
    RootSubgroupDesc,
    TorusLattice,
    character_of,
    conjugation_law_holds,
    descend_character,
    enumerate_root_subgroups,
    is_multiplicity_free,
    modification_character_holds,
    u_invariant_weight_multiplicities,
    weight_multiset_quotient,
    weight_set_quotient,
)

S2, S3 = TorusLattice.special(2), TorusLattice.special(3)


def test_lattice_shapes():
    assert TorusLattice.full(3).rank == 3
    assert TorusLattice.special(3).rank == 2
    q = TorusLattice.quotient(4, 6)
    assert q.rank == 3 and q.index == 2
    assert q.basis() == [(1, 0, 1), (0, 1, 1), (0, 0, 2)]
    with pytest.raises(ValueError):
        TorusLattice("weird", 2)


def test_character_examples():
    assert character_of(RootSubgroupDesc(0, (0, 2, 0)), S3).vector == (1, -2)
    assert character_of(RootSubgroupDesc(0, (0, 0)), S2).weight() == 1
    assert character_of(RootSubgroupDesc(0, (0, 3)), S2).weight() == 4
    assert character_of(RootSubgroupDesc(0, (0, 2, 0)), TorusLattice.full(3)).vector == (1, -2, 0)


def test_conjugation_law_for_examples():
    for U in (RootSubgroupDesc(0, (0, 2, 0)), RootSubgroupDesc(0, (0, 0)), RootSubgroupDesc(0, (0, 3))):
        assert conjugation_law_holds(U)
        assert conjugation_law_holds(U, TorusLattice.full(U.n))


def test_conjugation_law_for_all_small_subgroups():
    for n in (2, 3):
        for U in enumerate_root_subgroups(n, degree_bound=3):
            assert conjugation_law_holds(U)


def test_enumeration_counts():
    assert len(enumerate_root_subgroups(2, degree_bound=3)) == 8
    subs = enumerate_root_subgroups(2, 2, 5)
    assert len(subs) == 6 and {U.degree for U in subs} == {1, 3, 5}
    subs = enumerate_root_subgroups(2, 4, 5)
    assert len(subs) == 4 and {U.degree for U in subs} == {1, 5}


def test_equivariant_subgroups_are_equivariant_maps():
    c = Polynomial.var(3, 4)
    for d in (2, 3):
        for U in enumerate_root_subgroups(3, d, 4):
            m = U.as_map(c, 1)
            assert is_mu_d_equivariant(m, d)
            descend_character(character_of(U, S3), d)  # never raises


def test_descend_character_examples():
    chi = descend_character(Character(S2, (4,)), 2)
    assert chi.weight() == 2 and chi.lattice == TorusLattice.quotient(2, 2)
    with pytest.raises(NotDescendable):
        descend_character(Character(S2, (3,)), 2)
    with pytest.raises(NotDescendable):
        descend_character(Character(S3, (1, -2)), 3)
    # coprime case: the lattice does not change
    assert descend_character(Character(S3, (1, -2)), 2).vector == (1, -2)


def test_weight_set_examples():
    assert weight_set_quotient(2, 2, 6) == [1, 2, 3, 4, 5, 6]
    assert weight_set_quotient(4, 2, 9) == [1, 3, 5, 7, 9]
    assert weight_set_quotient(1, 2, 4) == [1, 2, 3, 4]


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_even_closed_form(d):
    B = 40
    expected = sorted({(k * d + 2) // 2 for k in range(B)} & set(range(1, B + 1)))
    assert weight_set_quotient(d, 2, B) == expected


def test_multiplicity_freeness():
    assert is_multiplicity_free([1, 2, 3])
    assert not is_multiplicity_free([1, 1, 2])
    assert is_multiplicity_free(weight_set_quotient(2, 2, 20))
    # the two directions give opposite signs before taking absolute values
    assert is_multiplicity_free(weight_multiset_quotient(2, 2, 20))


def test_u_invariant_multiplicities():
    ms = u_invariant_weight_multiplicities(RootSubgroupDesc(0, (0, 1)), 2, 4)
    assert ms == [(-k, 1) for k in range(4, -1, -1)]
    ms = u_invariant_weight_multiplicities(RootSubgroupDesc(0, (0, 0)), 2, 3)
    assert all(m == 1 for _, m in ms) and len(ms) == 4
    assert u_invariant_weight_multiplicities(RootSubgroupDesc(0, (0, 1)), 2, 0) == [(0, 1)]
    with pytest.raises(DimensionMismatch):
        u_invariant_weight_multiplicities(RootSubgroupDesc(0, (0, 1)), 3, 2)


def test_three_dimensional_invariants_are_multiplicity_free():
    # x1 + c x2 on A^3: invariants are polynomials in x2, x3 with distinct T'_3 weights
    ms = u_invariant_weight_multiplicities(RootSubgroupDesc(0, (0, 1, 0)), 3, 2)
    assert all(m == 1 for _, m in ms)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(0, 3), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_modification_character(i, m, b):
    m[i] = 0
    b[i] = 0
    assert modification_character_holds(RootSubgroupDesc(i, tuple(m)), tuple(b))


def test_root_subgroup_validation_and_json():
    with pytest.raises(ValueError):
        RootSubgroupDesc(0, (1, 2))
    U = RootSubgroupDesc(1, (3, 0))
    assert U.to_json() == {"i": 2, "m": [3, 0]}
    assert RootSubgroupDesc.from_json(U.to_json()) == U
    with pytest.raises(ValueError):
        U.modified((0, 1))
