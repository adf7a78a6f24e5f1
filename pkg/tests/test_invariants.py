import pytest
from hypothesis import given
from hypothesis import strategies as st

from cypres.algebra import IntPolynomial, sylvester_matrix
from cypres.cosets import enumerate_cosets
from cypres.errors import InvalidInput
from cypres.invariants import (
    AbelianGroup,
    Finite,
    Infinite,
    abelianization,
    bicyclic_u_ab_order,
    cyclic_ab_order,
    lemma33_order,
    relative_cyclic_order,
)
from cypres.params import JParams
from cypres.presentations import (
    BicyclicPresentation,
    CyclicPresentation,
    GroupPresentation,
    Word,
    build_derived_presentation,
    build_j_presentation,
    build_relative_cyclic_presentation,
    build_u_presentation,
    w_word,
)
from oracles import a_numeric, fraction_det, root_product, w_coeffs


def test_abelian_group_validation():
    assert str(AbelianGroup((5, 5))) == "Z_5 + Z_5"
    assert str(AbelianGroup((), 2)) == "Z^2"
    assert str(AbelianGroup(())) == "1"
    assert AbelianGroup((2, 4)).order == Finite(8)
    assert AbelianGroup((3,), 1).order == Infinite(1, (3,))
    with pytest.raises(InvalidInput):
        AbelianGroup((2, 3))
    with pytest.raises(InvalidInput):
        AbelianGroup((1, 4))


def test_abelianization_of_j441_is_cyclic_of_order_nm():
    assert abelianization(build_j_presentation(JParams(4, 4, 1))) == AbelianGroup((16,))


def test_abelianization_free_group():
    assert abelianization(GroupPresentation(("a", "b"), ())) == AbelianGroup((), 2)


def test_g12_order():
    # 35 from the independent root-product oracle
    cp = CyclicPresentation(12, Word.of(0, 3, (1, -1)))
    assert root_product([1, -1, 0, 1], 12, 1) == 35
    assert abelianization(cp) == AbelianGroup((35,))
    assert cyclic_ab_order(cp) == Finite(35)


def test_g16_order():
    cp = CyclicPresentation(16, Word.of(0, 4, (1, -1)))
    assert cyclic_ab_order(cp) == Finite(255)
    assert abelianization(cp).order == Finite(255)


def test_cyclic_order_infinite_on_shared_root():
    cp = CyclicPresentation(5, Word.of(1, (0, -1)))
    assert cyclic_ab_order(cp) == Infinite(1)
    assert abelianization(cp).free_rank == 1


def test_cyclic_order_of_trivial_word():
    assert cyclic_ab_order(CyclicPresentation(3, Word(()))) == Infinite(3)


@given(st.integers(1, 6), st.integers(-4, 4), st.integers(-4, 4))
def test_cyclic_order_matches_snf(r, a, b):
    w = Word.of((0, a), (1 % r, b), (2 % r, 1))
    cp = CyclicPresentation(r, w)
    ab = abelianization(cp)
    order = cyclic_ab_order(cp)
    assert order.is_finite == ab.is_finite
    if ab.is_finite:
        assert order == ab.order
    else:
        assert order.free_rank == ab.free_rank


@pytest.mark.parametrize("n,m,k,expected", [(4, 3, 1, 5), (6, 3, 1, 19)])
def test_bicyclic_u_order_examples(n, m, k, expected):
    assert a_numeric(n, m, k) == expected
    assert bicyclic_u_ab_order(build_u_presentation(JParams(n, m, k))) == Finite(expected)


def test_bicyclic_u_order_zero_word_is_free():
    bp = BicyclicPresentation(6, Word.of(0, (0, -1)), Word.of(0, 3))
    assert bicyclic_u_ab_order(bp) == Infinite(3)
    assert abelianization(bp).free_rank == 3


def test_bicyclic_u_order_requires_u_form():
    with pytest.raises(InvalidInput):
        bicyclic_u_ab_order(build_derived_presentation(JParams(4, 3, 1)))
    with pytest.raises(InvalidInput):
        bicyclic_u_ab_order(BicyclicPresentation(5, Word.of(0), Word.of(0, 2)))


@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_bicyclic_u_order_is_sylvester_determinant(n, m):
    for k in range(n * m):
        p = JParams(n, m, k)
        f = IntPolynomial(tuple(w_coeffs(n, m, k)))
        g = IntPolynomial.monomial(n * m // 2) + IntPolynomial.constant(1)
        det = abs(fraction_det(sylvester_matrix(f, g).to_lists())) if not f.is_zero() else 0
        order = bicyclic_u_ab_order(build_u_presentation(p))
        if det:
            assert order == Finite(det)
        else:
            assert not order.is_finite


@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_vw_and_uw_presentations_agree_for_all_k(n, m):
    for k in range(n * m):
        p = JParams(n, m, k)
        assert abelianization(build_derived_presentation(p)) == abelianization(build_u_presentation(p)), k


def test_binomial_cyclic_order_examples():
    assert lemma33_order(2, 1, 4) == 15
    assert lemma33_order(3, 2, 5) == 211
    assert abelianization(CyclicPresentation(5, Word.of((0, 3), (1, -2)))) == AbelianGroup((211,))
    with pytest.raises(InvalidInput):
        lemma33_order(3, 3, 2)
    with pytest.raises(InvalidInput):
        lemma33_order(2, 1, 0)


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 6))
def test_binomial_cyclic_order_matches_snf(r, s, n):
    from math import gcd

    if gcd(r, s) != 1:
        return
    ab = abelianization(CyclicPresentation(n, Word.of((0, r), (1 % n, -s))))
    expected = lemma33_order(r, s, n)
    if expected == 0:
        assert not ab.is_finite
    else:
        assert ab.order == Finite(expected)


@pytest.mark.parametrize("n,m,k", [(3, 3, 1), (4, 3, 1), (4, 5, 2), (2, 5, 1), (5, 2, 1)])
def test_relative_cyclic_order_by_enumeration(n, m, k):
    result = enumerate_cosets(build_relative_cyclic_presentation(n, m, k), (), 100_000)
    assert result.index == relative_cyclic_order(n, m, k)
