"""Cross-path verification sweeps over J_n(m,k).

Each check compares independently computed values and records a
:class:`Disagreement` instead of raising, so one run reports every problem.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Callable

from .algebra import IntPolynomial, poly_resultant
from .cosets import EnumerationResult, enumerate_cosets
from .errors import InvalidInput
from .invariants import AbelianGroup, Finite, Order, abelianization
from .jfamily import (
    Structure,
    a_closed_form,
    a_resultant,
    classify,
    derived_is_trivial,
    fibonacci_subgroup,
    group_order,
    is_isomorphic,
)
from .params import JParams
from .presentations import (
    GroupPresentation,
    Word,
    build_derived_presentation,
    build_E_presentation,
    build_fabc_presentation,
    build_u_presentation,
    representer_polynomial,
    w_word,
)

SWEEP_MAX_COSETS = 2_000_000


@dataclass(frozen=True)
class Disagreement:
    check: str
    params: tuple
    expected: object
    got: object

    def __str__(self) -> str:
        return f"{self.check} at {self.params}: expected {self.expected}, got {self.got}"


@dataclass
class SweepReport:
    ns: tuple[int, ...]
    m_max: int
    max_order: int
    cases: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    failures: list[Disagreement] = field(default_factory=list)
    unconfirmed: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, params: tuple, expected, got) -> bool:
        self.checks[check] = self.checks.get(check, 0) + 1
        if expected != got:
            self.failures.append(Disagreement(check, params, expected, got))
            return False
        return True


def coprime_cells(n: int, m_max: int, m_min: int = 1):
    for m in range(m_min, m_max + 1):
        for k in range(n * m):
            if gcd(m, k) == 1:
                yield JParams(n, m, k)


# ---------------------------------------------------------------------------
# Todd-Coxeter on J_n(m,k)


def _short_k(p: JParams) -> int:
    """Representative of k mod nm minimizing the relator length |m-k| + |k|."""
    return min((p.k, p.k - p.nm), key=lambda c: (abs(p.m - c) + abs(c), c < 0))


def j_enumeration_forms(p: JParams) -> list[tuple[str, GroupPresentation]]:
    """Presentations of J_n(m,k) for enumeration, in the order they are tried.

    Both use the shortest k mod nm. The second starts the relator at t^2;
    HLT behaves very differently on the two cyclic conjugates.
    """
    k = _short_k(p)
    n, m = p.n, p.m
    t_n = Word.of(("t", n))
    std = Word.of(("y", m - k), ("t", 3), ("y", k), ("t", 2))
    rot = Word.of(("t", 2), ("y", m - k), ("t", 3), ("y", k))
    return [
        (f"y^{m - k} t^3 y^{k} t^2", GroupPresentation(("t", "y"), (t_n, std))),
        (f"t^2 y^{m - k} t^3 y^{k}", GroupPresentation(("t", "y"), (t_n, rot))),
    ]


def tc_index(p: JParams, subgroup: tuple[Word, ...] = (), max_cosets: int = SWEEP_MAX_COSETS) -> tuple[EnumerationResult, str]:
    """First successful enumeration over :func:`j_enumeration_forms`; the last result if all exceed."""
    result, label = None, ""
    for label, pres in j_enumeration_forms(p):
        result = enumerate_cosets(pres, subgroup, max_cosets)
        if not result.exceeded:
            break
    return result, label


# ---------------------------------------------------------------------------
# Per-cell checks


def res_x_half_minus_one(p: JParams) -> int:
    """|Res(f_w, x^{nm/2} - 1)|."""
    f = representer_polynomial(w_word(p.n, p.m, p.k), p.nm)
    g = IntPolynomial.monomial(p.nm // 2) - IntPolynomial.constant(1)
    return abs(poly_resultant(f, g))


def half_cyclic_resultant_value(n: int, m: int) -> int:
    return 2**m - 1 if n == 4 else 3**m - 2**m


def check_cell(
    p: JParams,
    report: SweepReport,
    max_order: int,
    max_cosets: int = SWEEP_MAX_COSETS,
    u_m_max: int = 5,
    y_m_max: int = 5,
) -> None:
    key = p.as_tuple()
    closed = a_closed_form(p)
    res = a_resultant(p)
    derived_ab = abelianization(build_derived_presentation(p))
    report.record("a: closed form = resultant", key, closed, res.value if res.is_finite else res)
    report.record("a: closed form = SNF", key, closed, derived_ab.order.value if derived_ab.is_finite else derived_ab)
    mirror = JParams(p.n, p.m, (p.m - p.k) % p.nm)
    report.record("a: symmetric in k -> m-k", key, closed, a_closed_form(mirror))
    report.record("Res(f_w, x^{nm/2}-1)", key, half_cyclic_resultant_value(p.n, p.m), res_x_half_minus_one(p))
    if p.m <= u_m_max:
        u_ab = abelianization(build_u_presentation(p))
        report.record("(w,v) and (w,u) invariants agree", key, derived_ab, u_ab)
    rep = classify(p)
    if rep.structure != Structure.TRIVIAL_CYCLIC:
        report.record("J' invariants from classification = SNF", key, rep.derived_invariants, derived_ab)
    order = group_order(p).value
    if order <= max_order:
        tc, _ = tc_index(p, (), max_cosets)
        if tc.exceeded:
            report.unconfirmed.append((key, "trivial", max_cosets))
        report.record("Todd-Coxeter order", key, order, tc.index)
    if p.m <= y_m_max:
        tc_y, _ = tc_index(p, (Word.of("y"),), max_cosets)
        if tc_y.exceeded:
            report.unconfirmed.append((key, "<y>", max_cosets))
        report.record("nm * [J : <y>] = |J|", key, order, None if tc_y.exceeded else p.nm * tc_y.index)


def check_triviality(n: int, m_max: int, report: SweepReport) -> None:
    """a_resultant = 1 exactly when one of k, m-k, m-2k is 0 mod nm (all k, any gcd)."""
    for m in range(1, m_max + 1):
        for k in range(n * m):
            p = JParams(n, m, k)
            a = a_resultant(p)
            report.record("a = 1 iff J' trivial", p.as_tuple(), derived_is_trivial(p), a.is_finite and a.value == 1)


def isomorphism_invariants(p: JParams) -> tuple:
    rep = classify(p)
    return (rep.order, rep.structure, rep.derived_invariants)


def check_isomorphism_consistency(n: int, m_max: int, report: SweepReport) -> None:
    """Pairs declared isomorphic share all invariants; non-isomorphic pairs with distinct a differ in order."""
    for m in range(1, m_max + 1):
        cells = list(coprime_cells(n, m, m))
        for p1, p2 in combinations(cells, 2):
            iso, _ = is_isomorphic(p1, p2)
            key = (p1.as_tuple(), p2.as_tuple())
            inv1, inv2 = isomorphism_invariants(p1), isomorphism_invariants(p2)
            if iso:
                report.record("isomorphic pairs share invariants", key, inv1, inv2)
            elif classify(p1).a_value != classify(p2).a_value:
                report.record("non-isomorphic pairs with distinct a differ in order", key, True, inv1[0] != inv2[0])


def check_fabc(m_max: int, report: SweepReport, max_cosets: int = SWEEP_MAX_COSETS) -> None:
    """Todd-Coxeter order of the F^{m,k,m-k} presentation equals |J_4(m,k)|."""
    for p in coprime_cells(4, m_max):
        result = enumerate_cosets(build_fabc_presentation(p), (), max_cosets)
        report.record("F^{m,k,m-k} order = |J_4(m,k)|", p.as_tuple(), group_order(p).value, result.index)


def e_subgroup_words(n: int) -> tuple[Word, ...]:
    """x_i = t^i (y t^-1) t^-i for 0 <= i < n: the Fibonacci generators inside E, where y = x_0 t."""
    return tuple(Word.of(("t", i), "y", ("t", -i - 1)) for i in range(n))


def check_fibonacci(p: JParams, report: SweepReport, max_cosets: int = SWEEP_MAX_COSETS) -> None:
    """The E presentation of the reported Fibonacci group: [E : <t>] = |F| and [E : N] = n."""
    fib = fibonacci_subgroup(p)
    key = p.as_tuple()
    E = build_E_presentation(fib.r, fib.n, fib.l, fib.s)
    over_t = enumerate_cosets(E, (Word.of("t"),), max_cosets)
    over_n = enumerate_cosets(E, e_subgroup_words(fib.n), max_cosets)
    report.record(f"[E : <t>] = |{fib.label}|", key, fib.order, over_t.index)
    report.record(f"[E : N] = n for {fib.label}", key, fib.n, over_n.index)


def run_sweep(
    ns: tuple[int, ...] = (4, 6),
    m_max: int = 7,
    max_order: int = 50_000,
    max_cosets: int = SWEEP_MAX_COSETS,
    progress: Callable[[JParams], None] | None = None,
) -> SweepReport:
    """Every per-cell check over 1 <= m <= m_max, 0 <= k < nm, gcd(m,k) = 1, plus the family-wide checks."""
    report = SweepReport(tuple(ns), m_max, max_order)
    for n in sorted(ns):
        for p in coprime_cells(n, m_max):
            if progress:
                progress(p)
            check_cell(p, report, max_order, max_cosets)
            report.cases += 1
        check_triviality(n, min(m_max, 6), report)
        check_isomorphism_consistency(n, min(m_max, 5), report)
    return report


@dataclass(frozen=True)
class GcdAdjudication:
    """a_n(m,k) for d = gcd(m,k) > 1 against the two candidate identities in terms of b = a_n(m/d, k/d)."""

    params: tuple[int, int, int]
    d: int
    base: int
    resultant: Order
    snf: AbelianGroup

    @property
    def product_reading(self) -> int:
        return self.d * self.base

    @property
    def power_reading(self) -> int:
        return self.base**self.d

    def holds(self, value: int) -> bool:
        return self.resultant == Finite(value) and self.snf.order == Finite(value)

    @property
    def verdict(self) -> str | None:
        """"power", "product", or None when neither identity survives both oracles."""
        if self.holds(self.power_reading):
            return "power"
        if self.holds(self.product_reading):
            return "product"
        return None


def adjudicate_gcd(p: JParams) -> GcdAdjudication:
    if p.d <= 1:
        raise InvalidInput(f"{p}: needs gcd(m, k) > 1")
    d = p.d
    base = a_closed_form(JParams(p.n, p.m // d, p.k // d))
    snf = abelianization(build_derived_presentation(p))
    return GcdAdjudication(p.as_tuple(), d, base, a_resultant(p), snf)
