"""Abelian invariants: Smith normal form of relation matrices, and orders via resultants."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Union

from .algebra import IntPolynomial, poly_gcd_degree, poly_resultant, smith_normal_form
from .errors import InvalidInput
from .presentations import BicyclicPresentation, CyclicPresentation, GroupPresentation, representer_polynomial


@dataclass(frozen=True)
class Finite:
    value: int

    is_finite = True

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Infinite:
    """An infinite order, with the free rank and torsion factors when known."""

    free_rank: int | None = None
    torsion: tuple[int, ...] | None = None

    is_finite = False

    def __str__(self) -> str:
        return "infinite"


Order = Union[Finite, Infinite]


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{d_1} + ... + Z_{d_r} + Z^free_rank with 1 < d_1 | d_2 | ... | d_r."""

    invariant_factors: tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if self.free_rank < 0:
            raise InvalidInput("free rank must be non-negative")
        for d in factors:
            if d <= 1:
                raise InvalidInput(f"invariant factors must exceed 1, got {d}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InvalidInput(f"invariant factors {factors} do not form a divisibility chain")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Order:
        if self.free_rank:
            return Infinite(self.free_rank, self.invariant_factors)
        return Finite(prod(self.invariant_factors))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        parts = [f"Z_{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "1"


Presentable = Union[GroupPresentation, CyclicPresentation, BicyclicPresentation]


def abelianization(p: Presentable) -> AbelianGroup:
    """Abelian invariants from the SNF of the exponent-sum relation matrix."""
    M = p.relation_matrix()
    snf = smith_normal_form(M)
    return AbelianGroup(tuple(d for d in snf.invariant_factors if d > 1), M.cols - snf.rank)


def _x_power_minus(r: int, c: int) -> IntPolynomial:
    """x^r + c."""
    return IntPolynomial.monomial(r) + IntPolynomial.constant(c)


def cyclic_ab_order(cp: CyclicPresentation) -> Order:
    """|G_r(w)^ab| = |Res(f_w, x^r - 1)|; a zero resultant means infinite."""
    f = cp.polynomial()
    g = _x_power_minus(cp.r, -1)
    if f.is_zero():
        return Infinite(cp.r)
    res = poly_resultant(f, g)
    if res == 0:
        return Infinite(poly_gcd_degree(f, g))
    return Finite(abs(res))


def _u_half_shift(bp: BicyclicPresentation) -> int:
    """Return r/2 if v is x_j x_{j+r/2} for some j, else raise."""
    r = bp.r
    if r % 2:
        raise InvalidInput(f"u-form needs an even generator count, got {r}")
    letters = bp.v.letters
    if len(letters) != 2 or any(e != 1 for _, e in letters) or (letters[1][0] - letters[0][0]) % r != r // 2:
        raise InvalidInput(f"second word {bp.v} is not of the form x_j x_(j+{r // 2})")
    return r // 2


def bicyclic_u_ab_order(bp: BicyclicPresentation) -> Order:
    """|G_r(w, x_0 x_{r/2})^ab| = |Res(f_w, 1 + x^{r/2})|.

    A zero resultant gives an infinite group whose free rank is the number of
    common roots, deg gcd(f_w, 1 + x^{r/2}) (all of r/2 when f_w = 0).
    """
    half = _u_half_shift(bp)
    f = representer_polynomial(bp.w, bp.r)
    g = _x_power_minus(half, 1)
    if f.is_zero():
        return Infinite(half)
    res = poly_resultant(f, g)
    if res == 0:
        return Infinite(poly_gcd_degree(f, g))
    return Finite(abs(res))


def lemma33_order(r: int, s: int, n: int) -> int:
    """Order |r^n - s^n| of the cyclic group G_n(x_0^r x_1^-s), for gcd(r, s) = 1."""
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    if gcd(r, s) != 1:
        raise InvalidInput(f"gcd({r}, {s}) != 1")
    return abs(r**n - s**n)


def relative_cyclic_order(n: int, m: int, k: int) -> int:
    """Order of <y, t | t^n, y^(m-k) t y^k t^-1>, for gcd(m, k) = 1.

    The normal closure of y is G_n(x_0^(m-k) x_1^k), so the order is
    n |(m-k)^n - (-k)^n|; for even n this is n |(m-k)^n - k^n|.
    """
    return n * lemma33_order(m - k, -k, n)
