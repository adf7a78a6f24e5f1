"""Independent reference computations used to freeze expected values.

None of these share code with the package: determinants go through exact
rational Gaussian elimination, and resultants against x^N -+ 1 are products
over numerically computed roots of unity.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


def fraction_det(rows: list[list[int]]) -> int:
    n = len(rows)
    A = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for i in range(n):
        pivot = next((r for r in range(i, n) if A[r][i] != 0), None)
        if pivot is None:
            return 0
        if pivot != i:
            A[i], A[pivot] = A[pivot], A[i]
            det = -det
        det *= A[i][i]
        for r in range(i + 1, n):
            q = A[r][i] / A[i][i]
            if q:
                for c in range(i, n):
                    A[r][c] -= q * A[i][c]
    assert det.denominator == 1
    return int(det)


def root_product(coeffs: list[int], N: int, sign: int) -> int:
    """prod |f(lam)| over the roots of x^N - sign, rounded to an integer."""
    angles = np.arange(N) * 2 * np.pi / N
    if sign == -1:
        angles = angles + np.pi / N
    lam = np.exp(1j * angles)
    vals = np.polyval(list(reversed(coeffs)), lam)
    return int(round(float(np.prod(np.abs(vals)))))


def w_coeffs(n: int, m: int, k: int) -> list[int]:
    """Exponent-sum vector of w_n(m,k) over nm generators."""
    r = n * m
    c = [0] * r
    for a in range(n // 2):
        c[(a * m) % r] += 1
    for a in range(n // 2 - 1):
        c[(k + a * m) % r] -= 1
    return c


def a_numeric(n: int, m: int, k: int) -> int:
    """|(J')^ab| as prod |f_w(lam)| over lam^{nm/2} = -1."""
    return root_product(w_coeffs(n, m, k), n * m // 2, -1)


def coprime_cells(n: int, m_max: int):
    return [(n, m, k) for m in range(1, m_max + 1) for k in range(n * m) if gcd(m, k) == 1]
