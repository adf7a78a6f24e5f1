"""The parameter triple (n, m, k) naming the group J_n(m,k) = <t, y | t^n, y^(m-k) t^3 y^k t^2>."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidInput

SUPPORTED_N = (4, 6)


@dataclass(frozen=True, order=True)
class JParams:
    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.n not in SUPPORTED_N:
            raise InvalidInput(f"n must be 4 or 6, got {self.n}")

    @property
    def degenerate(self) -> bool:
        """m = 0: J is infinite cyclic and J' is trivial."""
        return self.m == 0

    @property
    def d(self) -> int:
        return gcd(self.m, self.k)

    @property
    def coprime(self) -> bool:
        return self.d == 1

    @property
    def nm(self) -> int:
        return self.n * self.m

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.m, self.k)

    def __str__(self) -> str:
        return f"J_{self.n}({self.m},{self.k})"


def normalize(n: int, m: int | None = None, k: int | None = None) -> JParams:
    """Canonical parameters: m >= 0 and, for m > 0, 0 <= k < nm.

    Uses J_n(m,k) = J_n(-m,-k) and y^(nm) = 1. Accepts either a JParams or the
    three integers. m = 0 is passed through unchanged (``.degenerate`` is set).
    """
    if isinstance(n, JParams):
        n, m, k = n.n, n.m, n.k
    if m is None or k is None:
        raise InvalidInput("normalize needs (n, m, k)")
    p = JParams(n, m, k)
    if m < 0:
        m, k = -m, -k
    if m > 0:
        k %= n * m
    if (m, k) == (p.m, p.k):
        return p
    return JParams(n, m, k)
