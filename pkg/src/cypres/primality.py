"""Miller-Rabin primality testing."""
from __future__ import annotations

import random
from dataclasses import dataclass

# These bases give a deterministic answer for every n < 3.3 * 10^24, which covers 64-bit inputs.
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_LIMIT = 1 << 64
PROBABILISTIC_ROUNDS = 40


@dataclass(frozen=True)
class PrimalityVerdict:
    is_prime: bool
    probabilistic: bool


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = PROBABILISTIC_ROUNDS, seed: int = 0) -> PrimalityVerdict:
    """Deterministic below 2^64; above that, ``rounds`` random bases from a seeded generator."""
    if n < 2:
        return PrimalityVerdict(False, False)
    for p in DETERMINISTIC_BASES:
        if n % p == 0:
            return PrimalityVerdict(n == p, False)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < DETERMINISTIC_LIMIT:
        return PrimalityVerdict(all(_strong_probable_prime(n, a, d, s) for a in DETERMINISTIC_BASES), False)
    rng = random.Random(seed)
    for _ in range(rounds):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1), d, s):
            return PrimalityVerdict(False, False)
    return PrimalityVerdict(True, True)
