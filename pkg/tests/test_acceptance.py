"""Acceptance criteria, each at its stated tolerance (exact equality throughout)."""
import random
from math import gcd

import pytest

from cypres.algebra import IntPolynomial, poly_resultant
from cypres.invariants import AbelianGroup, Finite, abelianization
from cypres.jfamily import a_closed_form, a_resultant, classify, fibonacci_subgroup, gaussian_mersenne, group_order
from cypres.params import JParams
from cypres.presentations import build_derived_presentation, build_u_presentation
from cypres.verify import (
    SweepReport,
    adjudicate_gcd,
    check_fabc,
    check_fibonacci,
    check_isomorphism_consistency,
    coprime_cells,
    res_x_half_minus_one,
    run_sweep,
    tc_index,
    half_cyclic_resultant_value,
)

PUBLISHED = {
    (4, 4, 1): 272,
    (4, 5, 1): 820,
    (4, 5, 2): 500,
    (6, 3, 1): 342,
    (6, 4, 1): 4632,
    (6, 5, 1): 38010,
    (6, 5, 2): 12090,
}


@pytest.fixture(scope="module")
def sweep():
    return run_sweep((4, 6), m_max=7, max_order=50_000)


def test_criterion_01_published_orders(criterion):
    bad = []
    for key, order in PUBLISHED.items():
        p = JParams(*key)
        nm = p.nm
        ab = abelianization(build_derived_presentation(p))
        tc, _ = tc_index(p)
        paths = {
            "group_order": group_order(p).value,
            "closed form": nm * a_closed_form(p),
            "resultant": nm * a_resultant(p).value,
            "SNF": nm * ab.order.value if ab.is_finite else None,
            "Todd-Coxeter": tc.index,
        }
        bad += [f"{key} {path}={value}" for path, value in paths.items() if value != order]
    criterion(1, not bad, f"7 orders x 5 paths; mismatches: {bad or 'none'}")


def test_criterion_02_cross_path_sweep(criterion, sweep):
    keys = ["a: closed form = resultant", "a: closed form = SNF", "Todd-Coxeter order"]
    fails = [str(f) for f in sweep.failures if f.check in keys]
    tc_expected = sum(
        1 for n in (4, 6) for p in coprime_cells(n, 7) if group_order(p).value <= 50_000
    )
    ok = not fails and sweep.checks["Todd-Coxeter order"] == tc_expected and not sweep.unconfirmed
    criterion(
        2,
        ok,
        f"{sweep.cases} cells, closed form = resultant = SNF; Todd-Coxeter confirmed "
        f"{sweep.checks['Todd-Coxeter order']}/{tc_expected} cells of order <= 50000; failures: {fails or 'none'}",
    )


def test_criterion_03_square_invariant_factors(criterion):
    expected = {(4, 10, 1): (31, 31), (4, 6, 1): (9, 9), (6, 8, 1): (337, 337)}
    got = {key: abelianization(build_derived_presentation(JParams(*key))).invariant_factors for key in expected}
    criterion(3, got == expected, f"SNF factors {got}")


def test_criterion_04_vw_uw_agreement(criterion):
    bad, count = [], 0
    for n in (4, 6):
        for p in coprime_cells(n, 5):
            count += 1
            vw = abelianization(build_derived_presentation(p))
            uw = abelianization(build_u_presentation(p))
            if vw != uw:
                bad.append((p.as_tuple(), str(vw), str(uw)))
    criterion(4, not bad, f"{count} cells; mismatches: {bad or 'none'}")


def test_criterion_05_resultant_values_and_binomial_identity(criterion):
    bad_values, count = [], 0
    for n in (4, 6):
        for p in coprime_cells(n, 8):
            count += 1
            got = res_x_half_minus_one(p)
            if got != half_cyclic_resultant_value(n, p.m):
                bad_values.append((p.as_tuple(), got))
    rng = random.Random(20240501)
    instances = []
    while len(instances) < 100:
        alpha, beta = rng.choice([x for x in range(-9, 10) if x]), rng.choice([x for x in range(-9, 10) if x])
        n, k = rng.randint(1, 12), rng.randint(1, 12)
        if gcd(n, k) == 1:
            instances.append((alpha, beta, k, n))
    bad_identity = []
    for alpha, beta, k, n in instances:
        f = IntPolynomial.monomial(k, alpha) - IntPolynomial.constant(beta)
        g = IntPolynomial.monomial(n) - IntPolynomial.constant(1)
        if poly_resultant(f, g) != beta**n - alpha**n:
            bad_identity.append((alpha, beta, k, n))
    odd_even = all(n % 2 == 1 and k % 2 == 0 for _, _, k, n in bad_identity)
    criterion(
        5,
        not bad_values and not bad_identity,
        f"|Res| values: {count} cells, {len(bad_values)} mismatches; "
        f"Res(ax^k-b, x^n-1) = b^n-a^n exactly: {100 - len(bad_identity)}/100 "
        f"(mismatches all have n odd, k even: {odd_even}; e.g. {bad_identity[:3]})",
    )


def test_criterion_06_fibonacci(criterion):
    a = fibonacci_subgroup(JParams(4, 3, -1))
    b = fibonacci_subgroup(JParams(6, 5, -1))
    report = SweepReport((4, 6), 5, 0)
    check_fibonacci(JParams(4, 3, -1), report)
    check_fibonacci(JParams(6, 5, -1), report)
    ok = (a.label, a.order, b.label, b.order) == ("F(4,4,2)", 39, "F(6,6,3)", 10655) and report.ok
    criterion(
        6,
        ok,
        f"J_4(3,-1) -> {a.label} order {a.order}; J_6(5,-1) -> {b.label} order {b.order}; "
        f"E-presentation indices: {[str(f) for f in report.failures] or 'all confirmed'}",
    )


def test_criterion_07_fabc_orders(criterion):
    report = SweepReport((4,), 5, 0)
    check_fabc(5, report)
    cells = sum(report.checks.values())
    criterion(7, report.ok, f"{cells} cells; failures: {[str(f) for f in report.failures] or 'none'}")


def test_criterion_08_isomorphism_consistency(criterion):
    report = SweepReport((4, 6), 5, 0)
    for n in (4, 6):
        check_isomorphism_consistency(n, 5, report)
    criterion(8, report.ok, f"{report.checks}; failures: {[str(f) for f in report.failures] or 'none'}")


def test_criterion_09_gcd_power_reading(criterion):
    expected = {(4, 6, 2): 25, (6, 6, 2): 361}
    parts, ok = [], True
    for key, value in expected.items():
        adj = adjudicate_gcd(JParams(*key))
        ok &= adj.verdict is not None and adj.resultant == Finite(value)
        parts.append(
            f"{key}: resultant {adj.resultant}, SNF {adj.snf}, d*a = {adj.product_reading}, "
            f"a^d = {adj.power_reading} -> {adj.verdict or 'neither'}"
        )
    criterion(9, ok, "; ".join(parts))


def test_criterion_10_gaussian_mersenne(criterion):
    rows = {m: (a_closed_form(JParams(4, m, 1)), gaussian_mersenne(m)) for m in (3, 5, 7, 9, 11, 13)}
    bad = {m: v for m, v in rows.items() if v[0] != v[1]}
    criterion(10, not bad, f"a_4(m,1) vs GM_m: {rows}; mismatches at m = {sorted(bad) or 'none'}")
