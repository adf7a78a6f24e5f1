"""Orders, structure, isomorphism and related decisions for the groups J_n(m,k).

a_n(m,k) denotes |J'/J''|. For finite J, |J| = nm * a_n(m,k).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd

from .algebra import QuadInt
from .errors import InternalError, InvalidInput, Unsupported
from .invariants import AbelianGroup, Finite, Infinite, Order, bicyclic_u_ab_order
from .params import JParams, normalize
from .presentations import build_u_presentation
from .primality import is_prime

__all__ = [
    "FibonacciReport",
    "PrimeFamilyEntry",
    "Structure",
    "StructureReport",
    "a_closed_form",
    "a_resultant",
    "canonical_form",
    "classify",
    "derived_is_trivial",
    "fibonacci_subgroup",
    "gaussian_mersenne",
    "group_order",
    "is_aspherical",
    "is_isomorphic",
    "normalize",
    "prime_families",
]

# 2cos(j pi/4) for j mod 8 and 2cos(j pi/6) for j mod 12.
TWO_COS_8 = tuple(QuadInt(a, b, 2) for a, b in ((2, 0), (0, 1), (0, 0), (0, -1), (-2, 0), (0, -1), (0, 0), (0, 1)))
TWO_COS_12 = tuple(
    QuadInt(a, b, 3)
    for a, b in ((2, 0), (0, 1), (1, 0), (0, 0), (-1, 0), (0, -1), (-2, 0), (0, -1), (-1, 0), (0, 0), (1, 0), (0, 1))
)


def _require_coprime(p: JParams) -> None:
    if p.m < 1:
        raise InvalidInput(f"{p}: requires m != 0")
    if not p.coprime:
        raise InvalidInput(f"{p}: requires gcd(m, k) = 1, got {p.d}")


def _sqrt_power(d: int, m: int) -> QuadInt:
    """(sqrt d)^m as d^(m//2) * (sqrt d)^(m % 2)."""
    base = QuadInt(d ** (m // 2), 0, d)
    return base * QuadInt(0, 1, d) if m % 2 else base


def a_closed_form(p: JParams) -> int:
    """a_n(m,k) from the trigonometric closed form, evaluated exactly (gcd(m,k) = 1).

    a_4 = 2^m + 1 - (sqrt 2)^m 2cos((2k-m) pi/4)
    a_6 = 3^m + 4^m - (2 sqrt 3)^m 2cos((2k-m) pi/6)
    """
    q = normalize(p)
    _require_coprime(q)
    m, k = q.m, q.k
    if q.n == 4:
        value = 2**m + 1 - _sqrt_power(2, m) * TWO_COS_8[(2 * k - m) % 8]
    else:
        value = 3**m + 4**m - (2**m) * _sqrt_power(3, m) * TWO_COS_12[(2 * k - m) % 12]
    if not value.is_integral:
        raise InternalError(f"{p}: closed form left an irrational part {value}")
    return value.a


@lru_cache(maxsize=4096)
def _a_resultant_cached(n: int, m: int, k: int) -> Order:
    return bicyclic_u_ab_order(build_u_presentation(JParams(n, m, k)))


def a_resultant(p: JParams) -> Order:
    """|Res(f_w, 1 + x^{nm/2})| = |(J')^ab| for any m != 0."""
    q = normalize(p)
    if q.m == 0:
        raise InvalidInput(f"{p}: requires m != 0")
    return _a_resultant_cached(q.n, q.m, q.k)


def derived_is_trivial(p: JParams) -> bool:
    """J' = 1 exactly when one of k, m-k, m-2k is 0 mod nm (m != 0)."""
    q = normalize(p)
    if q.m == 0:
        return True
    r = q.nm
    return any(v % r == 0 for v in (q.k, q.m - q.k, q.m - 2 * q.k))


def _finite_a(p: JParams) -> int:
    a = a_resultant(p)
    if not a.is_finite:
        raise InternalError(f"{p}: (J')^ab came out infinite")
    return a.value


def group_order(p: JParams) -> Order:
    q = normalize(p)
    if q.m == 0:
        return Infinite(free_rank=1)
    if q.coprime:
        return Finite(q.nm * _finite_a(q))
    if derived_is_trivial(q):
        return Finite(q.nm)
    return Infinite()


class Structure(str, Enum):
    TRIVIAL_CYCLIC = "trivial-cyclic"
    METACYCLIC = "metacyclic"
    METABELIAN_NON_METACYCLIC = "metabelian-non-metacyclic"
    VIRTUALLY_FREE = "virtually-free"
    INFINITE_CYCLIC = "infinite-cyclic"


@dataclass(frozen=True)
class StructureReport:
    """Classification of one group. ``params`` is the normalized triple.

    ``derived_invariants`` describes J' when it is abelian. For the
    virtually free case J' is a free product of d copies of A = J_n(m/d,k/d)',
    ``free_factor_order`` is |A| and ``j2_free_rank`` the rank of the free group J''.
    """

    params: JParams
    order: Order
    a_value: int
    structure: Structure
    derived_invariants: AbelianGroup | None
    d: int
    j2_free_rank: int | None = None
    free_factor_order: int | None = None


def _square_factor(q: JParams) -> int:
    """q with J' = Z_q + Z_q, for gcd(m,k) = 1 and m - 2k = 0 mod n."""
    m, j = q.m, q.m - 2 * q.k
    half = m // 2
    if q.n == 4:
        return 2**half - 1 if j % 8 == 0 else 2**half + 1
    return 4**half - 3**half if j % 12 == 0 else 4**half + 3**half


def j2_rank(d: int, a: int) -> int:
    """Rank of the free group J'' when J' is a free product of d copies of a group of order a."""
    return 1 - d * a ** (d - 1) + d * a**d - a**d


def classify(p: JParams) -> StructureReport:
    q = normalize(p)
    d = q.d
    trivial = AbelianGroup(())
    if q.m == 0:
        return StructureReport(q, Infinite(free_rank=1), 1, Structure.INFINITE_CYCLIC, trivial, d)
    if derived_is_trivial(q):
        return StructureReport(q, Finite(q.nm), 1, Structure.TRIVIAL_CYCLIC, trivial, d)
    a = _finite_a(q)
    if q.coprime:
        order = Finite(q.nm * a)
        if (q.m - 2 * q.k) % q.n:
            return StructureReport(q, order, a, Structure.METACYCLIC, AbelianGroup((a,)), d)
        s = _square_factor(q)
        if s * s != a:
            raise InternalError(f"{q}: expected a = {s}^2, got {a}")
        return StructureReport(q, order, a, Structure.METABELIAN_NON_METACYCLIC, AbelianGroup((s, s)), d)
    base = JParams(q.n, q.m // d, q.k // d)
    a_base = _finite_a(base)
    return StructureReport(
        q, Infinite(), a, Structure.VIRTUALLY_FREE, None, d, j2_free_rank=j2_rank(d, a_base), free_factor_order=a_base
    )


def _require_e_hypothesis(p: JParams) -> JParams:
    q = normalize(p)
    if q.m < 1 or not q.coprime:
        raise Unsupported(f"{p}: isomorphism classification needs m != 0 and gcd(m, k) = 1")
    return q


def is_isomorphic(p1: JParams, p2: JParams) -> tuple[bool, str]:
    """Decide J_n(m1,k1) = J_n(m2,k2) for coprime parameters; returns (verdict, reason)."""
    if p1.n != p2.n:
        raise Unsupported(f"groups with different n ({p1.n}, {p2.n}) are outside the classification")
    q1, q2 = _require_e_hypothesis(p1), _require_e_hypothesis(p2)
    n = q1.n
    if q1.m != q2.m:
        return False, "m1 != m2"
    if (q1.k - q2.k) % n == 0:
        return True, "k1 ≡ k2 mod n"
    if (q1.k + q2.k - q1.m) % n == 0:
        return True, "k1 + k2 ≡ m mod n"
    return False, "k1 ≢ k2 and k1 + k2 ≢ m mod n"


def canonical_form(p: JParams) -> JParams:
    """First of J_n(m,1), J_6(m,3), J_n(m,-1) isomorphic to the input (k = -1 written as nm - 1)."""
    q = _require_e_hypothesis(p)
    n, m = q.n, q.m
    candidates = [1]
    if n == 6 and gcd(m, 3) == 1:
        candidates.append(3)
    candidates.append(q.nm - 1)
    for c in candidates:
        if is_isomorphic(q, JParams(n, m, c))[0]:
            return JParams(n, m, c % q.nm)
    raise InternalError(f"{p}: no canonical representative found")


def is_aspherical(p: JParams) -> bool:
    """m = +-1 and k = 0 or m mod n, on the parameters as given."""
    return p.m in (1, -1) and (p.k % p.n == 0 or (p.k - p.m) % p.n == 0)


@dataclass(frozen=True)
class FibonacciReport:
    """The index-n normal subgroup N of J_n(m,k) as a generalized Fibonacci group F(r, n, l, s)."""

    label: str
    r: int
    n: int
    l: int
    s: int
    order: int


def _fib_label(r: int, n: int, l: int, s: int) -> str:
    if l == 1 and s != 1:
        return f"H({r},{n},{s})"
    if s == 1:
        return f"F({r},{n},{l})" if l != 1 else f"F({r},{n})"
    return f"F({r},{n},{l},{s})"


def fibonacci_subgroup(p: JParams) -> FibonacciReport:
    q = normalize(p)
    if q.m < 1 or not q.coprime:
        raise Unsupported(f"{p}: needs m != 0 and gcd(m, k) = 1")
    n, m = q.n, q.m
    if m % n not in (1, n - 1):
        raise Unsupported(f"{p}: needs m = +-1 mod n")
    c = canonical_form(q).k
    plus = m % n == 1
    if c == q.nm - 1:
        r, l, s = m + 1, n // 2, 1
    elif c == 1 and n == 4:
        r, l, s = (m + 3, 3, 3) if plus else (m + 2, 1, 2)
    elif c == 1:
        r, l, s = (m + 5, 4, 5) if plus else (m + 2, 2, 2)
    elif c == 3:
        r, l, s = m + 3, 1, 3
    else:
        raise InternalError(f"{p}: unexpected canonical form k = {c}")
    order = group_order(q)
    return FibonacciReport(_fib_label(r, n, l, s), r, n, l, s, order.value // n)


# ---------------------------------------------------------------------------
# Prime families

FAMILIES = ("mersenne", "fourminusthree", "gm")


@dataclass(frozen=True)
class PrimeFamilyEntry:
    """One family value with its primality verdict.

    ``witness`` is a J_n(m,k) whose a-value is ``value`` (``squared`` False)
    or ``value**2`` (``squared`` True); None when no coprime witness exists.
    """

    family: str
    index: int
    value: int
    is_prime: bool
    probabilistic: bool
    witness: JParams | None
    witness_a: int | None
    squared: bool


def gaussian_mersenne(m: int) -> int:
    """Norm of (1 +- i)^m - 1 for odd m."""
    if m < 1 or m % 2 == 0:
        raise InvalidInput(f"Gaussian-Mersenne norm needs odd positive m, got {m}")
    half = 2 ** ((m + 1) // 2)
    return 2**m - half + 1 if m % 8 in (1, 7) else 2**m + half + 1


def _smallest_k(n: int, m: int, residue: int, modulus: int) -> int | None:
    for k in range(1, n * m):
        if k % modulus == residue % modulus and gcd(k, m) == 1:
            return k
    return None


def _entry(family: str, index: int, value: int, witness: JParams | None, squared: bool) -> PrimeFamilyEntry:
    verdict = is_prime(value)
    witness_a = None
    if witness is not None:
        witness_a = _finite_a(witness)
        expected = value * value if squared else value
        if witness_a != expected:
            raise InternalError(f"{family} index {index}: a{witness.as_tuple()} = {witness_a}, expected {expected}")
    return PrimeFamilyEntry(family, index, value, verdict.is_prime, verdict.probabilistic, witness, witness_a, squared)


def prime_families(family: str, max_index: int, min_index: int = 1) -> list[PrimeFamilyEntry]:
    """Family values for indices in [min_index, max_index] (odd m only for gm)."""
    if family not in FAMILIES:
        raise InvalidInput(f"unknown family {family!r}; expected one of {FAMILIES}")
    if max_index > 4096:
        raise InvalidInput("max_index is capped at 4096")
    out = []
    for i in range(max(min_index, 1), max_index + 1):
        if family == "mersenne":
            k = _smallest_k(4, 2 * i, i, 4)
            out.append(_entry(family, i, 2**i - 1, JParams(4, 2 * i, k) if k else None, True))
        elif family == "fourminusthree":
            k = _smallest_k(6, 2 * i, i, 6)
            out.append(_entry(family, i, 4**i - 3**i, JParams(6, 2 * i, k) if k else None, True))
        elif i % 2:
            k = _smallest_k(4, i, 2 - i, 4)
            out.append(_entry(family, i, gaussian_mersenne(i), JParams(4, i, k) if k else None, False))
    return out
