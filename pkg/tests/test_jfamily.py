from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cypres.errors import InvalidInput, Unsupported
from cypres.invariants import AbelianGroup, Finite, Infinite, abelianization
from cypres.jfamily import (
    Structure,
    a_closed_form,
    a_resultant,
    canonical_form,
    classify,
    derived_is_trivial,
    fibonacci_subgroup,
    gaussian_mersenne,
    group_order,
    is_aspherical,
    is_isomorphic,
    j2_rank,
    prime_families,
)
from cypres.params import JParams, normalize
from cypres.presentations import build_derived_presentation
from oracles import a_numeric, coprime_cells

params = st.builds(JParams, st.sampled_from([4, 6]), st.integers(-12, 12), st.integers(-60, 60))
coprime_params = st.builds(
    lambda n, m, k: JParams(n, m, k), st.sampled_from([4, 6]), st.integers(1, 9), st.integers(0, 53)
).filter(lambda p: gcd(p.m, p.k) == 1)

PUBLISHED = [(4, 4, 1, 272), (4, 5, 1, 820), (4, 5, 2, 500), (6, 3, 1, 342), (6, 4, 1, 4632), (6, 5, 1, 38010), (6, 5, 2, 12090)]


# -- normalization -----------------------------------------------------------


def test_normalize_examples():
    assert normalize(4, -5, -1) == JParams(4, 5, 1)
    assert normalize(4, -5, 1) == JParams(4, 5, 19)
    assert normalize(6, 3, 19) == JParams(6, 3, 1)
    assert normalize(4, 0, 7).degenerate


def test_invalid_n():
    with pytest.raises(InvalidInput):
        JParams(5, 1, 1)


@given(params)
def test_normalize_idempotent_and_sign_symmetric(p):
    q = normalize(p)
    assert normalize(q) == q
    if p.m:
        assert normalize(p.n, -p.m, -p.k) == q
    assert q.m >= 0
    if q.m:
        assert 0 <= q.k < q.nm


# -- a_n(m,k) ------------------------------------------------------------------


@pytest.mark.parametrize("n,m,k,order", PUBLISHED)
def test_published_orders(n, m, k, order):
    p = JParams(n, m, k)
    assert group_order(p) == Finite(order)
    assert a_closed_form(p) * n * m == order
    assert a_resultant(p) == Finite(order // (n * m))


def test_closed_form_examples():
    assert a_closed_form(JParams(4, 4, 1)) == 17
    assert a_closed_form(JParams(6, 5, 2)) == 403
    assert a_closed_form(JParams(6, 8, 1)) == 113569 == 337**2
    assert a_closed_form(JParams(4, 1, 1)) == 1


def test_closed_form_requires_coprime():
    with pytest.raises(InvalidInput):
        a_closed_form(JParams(4, 6, 2))


@pytest.mark.parametrize("n,m,k", coprime_cells(4, 8) + coprime_cells(6, 6))
def test_closed_form_matches_numeric_root_product(n, m, k):
    assert a_closed_form(JParams(n, m, k)) == a_numeric(n, m, k)


@given(coprime_params)
def test_closed_form_equals_resultant(p):
    assert Finite(a_closed_form(p)) == a_resultant(p)


@given(coprime_params)
def test_closed_form_symmetric(p):
    assert a_closed_form(p) == a_closed_form(JParams(p.n, p.m, (p.m - p.k) % p.nm))


def test_resultant_non_coprime():
    assert a_resultant(JParams(4, 6, 2)) == Finite(25)
    assert a_numeric(4, 6, 2) == 25
    with pytest.raises(InvalidInput):
        a_resultant(JParams(4, 0, 1))


@pytest.mark.parametrize("n", [4, 6])
def test_trivial_derived_subgroup_iff_a_is_one(n):
    for m in range(1, 7):
        for k in range(n * m):
            p = JParams(n, m, k)
            a = a_resultant(p)
            assert (a == Finite(1)) == derived_is_trivial(p), (m, k)


# -- orders and classification -------------------------------------------------


def test_group_order_examples():
    assert group_order(JParams(6, 5, 1)) == Finite(38010)
    assert group_order(JParams(4, 1, 2)) == Finite(20)
    assert group_order(JParams(6, 6, 2)) == Infinite()
    assert group_order(JParams(4, 0, 3)) == Infinite(1)
    assert group_order(JParams(4, 6, 3)) == Finite(24)


def test_classify_examples():
    r = classify(JParams(4, 10, 1))
    assert r.structure == Structure.METABELIAN_NON_METACYCLIC
    assert r.derived_invariants == AbelianGroup((31, 31))
    r = classify(JParams(4, 6, 2))
    assert (r.structure, r.d, r.free_factor_order, r.j2_free_rank) == (Structure.VIRTUALLY_FREE, 2, 5, 16)
    r = classify(JParams(6, 3, 1))
    assert (r.structure, r.derived_invariants) == (Structure.METACYCLIC, AbelianGroup((19,)))
    r = classify(JParams(4, 2, 1))
    assert (r.structure, r.order) == (Structure.TRIVIAL_CYCLIC, Finite(8))
    assert classify(JParams(4, 0, 3)).structure == Structure.INFINITE_CYCLIC


def test_virtually_free_n6():
    r = classify(JParams(6, 6, 2))
    assert (r.a_value, r.free_factor_order, r.j2_free_rank) == (361, 19, 324)


def test_j2_rank_formula():
    assert j2_rank(2, 5) == 16
    assert j2_rank(1, 7) == 0
    assert j2_rank(3, 2) == 1 - 3 * 4 + 3 * 8 - 8


@given(params)
def test_report_invariants(p):
    r = classify(p)
    finite = r.structure in (Structure.TRIVIAL_CYCLIC, Structure.METACYCLIC, Structure.METABELIAN_NON_METACYCLIC)
    assert r.order.is_finite == finite
    if finite:
        assert r.order == Finite(r.params.nm * r.a_value)
    if r.structure == Structure.METABELIAN_NON_METACYCLIC:
        q, q2 = r.derived_invariants.invariant_factors
        assert q == q2 and q * q == r.a_value


@pytest.mark.parametrize("n,m,k", [c for c in coprime_cells(4, 10) + coprime_cells(6, 8) if (c[1] - 2 * c[2]) % c[0] == 0])
def test_square_case_matches_snf(n, m, k):
    p = JParams(n, m, k)
    r = classify(p)
    assert abelianization(build_derived_presentation(p)) == r.derived_invariants


def test_square_case_values():
    assert classify(JParams(4, 6, 1)).derived_invariants == AbelianGroup((9, 9))
    assert classify(JParams(6, 8, 1)).derived_invariants == AbelianGroup((337, 337))


# -- isomorphism ----------------------------------------------------------------


def test_is_isomorphic_examples():
    assert is_isomorphic(JParams(4, 5, 1), JParams(4, 5, 9)) == (True, "k1 ≡ k2 mod n")
    assert is_isomorphic(JParams(4, 5, 1), JParams(4, 5, 2))[0] is False
    assert is_isomorphic(JParams(4, 4, 1), JParams(4, 4, 3)) == (True, "k1 + k2 ≡ m mod n")
    assert is_isomorphic(JParams(4, 4, 1), JParams(4, 5, 1)) == (False, "m1 != m2")


def test_is_isomorphic_outside_hypothesis():
    with pytest.raises(Unsupported):
        is_isomorphic(JParams(4, 6, 2), JParams(4, 6, 1))
    with pytest.raises(Unsupported):
        is_isomorphic(JParams(4, 0, 1), JParams(4, 0, 1))
    with pytest.raises(Unsupported):
        is_isomorphic(JParams(4, 3, 1), JParams(6, 3, 1))


def test_canonical_form_examples():
    assert canonical_form(JParams(6, 7, 15)) == JParams(6, 7, 3)
    assert canonical_form(JParams(4, 5, 9)) == JParams(4, 5, 1)
    assert canonical_form(JParams(4, 4, 3)) == JParams(4, 4, 1)
    with pytest.raises(Unsupported):
        canonical_form(JParams(4, 6, 2))


@given(coprime_params)
def test_canonical_form_properties(p):
    c = canonical_form(p)
    assert canonical_form(c) == c
    assert is_isomorphic(p, c)[0]
    allowed = {1, c.nm - 1} | ({3} if p.n == 6 else set())
    assert c.k in allowed
    assert classify(c).order == classify(p).order


@given(coprime_params, coprime_params)
def test_isomorphic_groups_share_invariants(p1, p2):
    if p1.n != p2.n:
        return
    if is_isomorphic(p1, p2)[0]:
        r1, r2 = classify(p1), classify(p2)
        assert (r1.order, r1.structure, r1.derived_invariants) == (r2.order, r2.structure, r2.derived_invariants)


def test_is_aspherical_examples():
    assert is_aspherical(JParams(4, 1, 0))
    assert not is_aspherical(JParams(4, 3, 1))
    assert is_aspherical(JParams(6, 1, 7))
    assert is_aspherical(JParams(4, -1, -1))


# -- Fibonacci subgroups --------------------------------------------------------


def test_fibonacci_examples():
    f = fibonacci_subgroup(JParams(4, 3, -1))
    assert (f.label, f.order) == ("F(4,4,2)", 39)
    f = fibonacci_subgroup(JParams(6, 5, -1))
    assert (f.label, f.order) == ("F(6,6,3)", 10655)
    f = fibonacci_subgroup(JParams(4, 3, 1))
    assert (f.label, f.order) == ("H(5,4,2)", 15)


def test_fibonacci_hypotheses():
    with pytest.raises(Unsupported):
        fibonacci_subgroup(JParams(4, 3, 3))
    with pytest.raises(Unsupported):
        fibonacci_subgroup(JParams(4, 6, 1))


# -- prime families ---------------------------------------------------------------


def test_gaussian_mersenne_values():
    assert [gaussian_mersenne(m) for m in (1, 3, 5, 7, 9, 11, 13)] == [1, 13, 41, 113, 481, 2113, 8321]
    with pytest.raises(InvalidInput):
        gaussian_mersenne(4)


def test_prime_family_examples():
    (row,) = prime_families("mersenne", 5, 5)
    assert (row.value, row.is_prime, row.witness, row.witness_a) == (31, True, JParams(4, 10, 1), 961)
    (row,) = prime_families("gm", 5, 5)
    assert (row.value, row.is_prime, row.witness, row.witness_a) == (41, True, JParams(4, 5, 1), 41)
    (row,) = prime_families("fourminusthree", 2, 2)
    assert (row.value, row.is_prime) == (7, True)
    gm = {r.index: r.value for r in prime_families("gm", 13)}
    assert gm[7] == 113


def test_prime_family_rows_are_consistent():
    for fam in ("mersenne", "fourminusthree", "gm"):
        for row in prime_families(fam, 25):
            if row.witness is not None:
                expected = row.value**2 if row.squared else row.value
                assert a_resultant(row.witness) == Finite(expected)


def test_prime_family_large_values_are_probabilistic():
    (row,) = prime_families("mersenne", 89, 89)
    assert row.is_prime and row.probabilistic
    (row,) = prime_families("mersenne", 61, 61)
    assert row.is_prime and not row.probabilistic


def test_prime_family_errors():
    with pytest.raises(InvalidInput):
        prime_families("fermat", 5)
    with pytest.raises(InvalidInput):
        prime_families("gm", 10_000)
