"""Exact integer arithmetic: polynomials, real quadratic integers, matrices.

Everything here works over Python's arbitrary-precision ``int``; no floating
point is used anywhere except in :meth:`QuadInt.__float__`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Sequence

from .errors import InvalidInput

__all__ = [
    "IntPolynomial",
    "QuadInt",
    "quad_add",
    "quad_mul",
    "quad_pow",
    "IntMatrix",
    "SnfResult",
    "bareiss_det",
    "sylvester_matrix",
    "poly_resultant",
    "sylvester_resultant",
    "poly_gcd_degree",
    "circulant_matrix",
    "smith_normal_form",
]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense polynomial with integer coefficients; ``coeffs[i]`` multiplies x^i.

    Trailing zeros are stripped on construction, so equal polynomials compare
    equal and the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def from_terms(cls, terms: dict[int, int] | Iterable[tuple[int, int]]) -> IntPolynomial:
        """Build from ``{exponent: coefficient}``; repeated exponents accumulate."""
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if e < 0:
                raise InvalidInput(f"negative exponent {e}")
            acc[e] = acc.get(e, 0) + c
        if not acc:
            return cls(())
        out = [0] * (max(acc) + 1)
        for e, c in acc.items():
            out[e] = c
        return cls(tuple(out))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls.from_terms({degree: coeff})

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(tuple(a * other for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Division by a divisor whose leading coefficient is +1 or -1."""
        lc = divisor.leading
        if lc not in (1, -1):
            raise InvalidInput("divisor must have leading coefficient +1 or -1")
        rem = list(self.coeffs)
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top] * lc
            if c:
                quot[top - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[top - dd + j] -= c * b
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd]) if dd > 0 else ())

    def mod_cyclic(self, r: int) -> IntPolynomial:
        """Reduce modulo x^r - 1 by folding exponents mod r."""
        out = [0] * r
        for i, c in enumerate(self.coeffs):
            out[i % r] += c
        return IntPolynomial(tuple(out))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xp = "x" if i == 1 else f"x^{i}"
                body = xp if mag == 1 else f"{mag}*{xp}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_gcd_degree(f: IntPolynomial, g: IntPolynomial) -> int:
    """Degree of gcd(f, g) over the rationals (gcd(0, g) = g; -1 if both zero)."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    while b:
        # a mod b
        while len(a) >= len(b):
            q = a[-1] / b[-1]
            shift = len(a) - len(b)
            for j, c in enumerate(b):
                a[shift + j] -= q * c
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


# ---------------------------------------------------------------------------
# Real quadratic integers


@dataclass(frozen=True)
class QuadInt:
    """The number ``a + b*sqrt(d)`` in Z[sqrt(d)]."""

    a: int
    b: int = 0
    d: int = 2

    def _check(self, other: QuadInt) -> None:
        if self.d != other.d:
            raise InvalidInput(f"mixed radicands {self.d} and {other.d}")

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(other, 0, self.d)
        self._check(other)
        return other

    def __add__(self, other) -> QuadInt:
        other = self._coerce(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.a, -self.b, self.d)

    def __sub__(self, other) -> QuadInt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QuadInt:
        return self._coerce(other) - self

    def __mul__(self, other) -> QuadInt:
        other = self._coerce(other)
        return QuadInt(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QuadInt:
        if e < 0:
            raise InvalidInput("negative exponent")
        result = QuadInt(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> QuadInt:
        return QuadInt(self.a, -self.b, self.d)

    def norm(self) -> int:
        return self.a * self.a - self.d * self.b * self.b

    @property
    def is_integral(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return self.a + self.b * self.d ** 0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.d})"


def quad_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def quad_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def quad_pow(x: QuadInt, e: int) -> QuadInt:
    return x ** e


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidInput("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInput(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        for r in rows:
            if len(r) != ncols:
                raise InvalidInput("ragged rows")
        return cls(len(rows), ncols, tuple(int(v) for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], size)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of bounds for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.entries[i * self.cols + j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise InvalidInput("dimension mismatch")
        ocols = [other.entries[j::other.cols] for j in range(other.cols)] if other.cols else []
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, col)) for col in ocols])
        return IntMatrix.from_rows(out, other.cols)

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise InvalidInput("column mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def det(self) -> int:
        if self.rows != self.cols:
            raise InvalidInput("determinant of a non-square matrix")
        return bareiss_det(self.to_lists())


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination. Consumes ``rows``."""
    n = len(rows)
    if n == 0:
        return 1
    M = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot_row = M[k]
        pk = pivot_row[k]
        tail = pivot_row[k + 1:]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            if mik == 0:
                if pk != prev:
                    Mi[k + 1:] = [(v * pk) // prev for v in Mi[k + 1:]]
            else:
                Mi[k + 1:] = [(v * pk - mik * t) // prev for v, t in zip(Mi[k + 1:], tail)]
            Mi[k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> IntMatrix:
    """Standard (deg f + deg g)-square Sylvester matrix: deg g shifted rows of f, then deg f of g.

    Rows list coefficients from the highest power down.
    """
    a, b = f.degree, g.degree
    if a < 0 or b < 0:
        raise InvalidInput("Sylvester matrix of a zero polynomial")
    size = a + b
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for i in range(b):
        rows.append([0] * i + fr + [0] * (size - i - len(fr)))
    for i in range(a):
        rows.append([0] * i + gr + [0] * (size - i - len(gr)))
    return IntMatrix.from_rows(rows, size)


def _zero_case(f: IntPolynomial, g: IntPolynomial) -> int | None:
    if f.is_zero() and g.is_zero():
        raise InvalidInput("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        # a nonzero constant has no roots, so nothing can vanish against it
        return 1 if other.degree == 0 else 0
    if g.degree == 0:
        return g.leading ** f.degree
    if f.degree == 0:
        return f.leading ** g.degree
    return None


def sylvester_resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) as the determinant of the full Sylvester matrix, no preprocessing."""
    special = _zero_case(f, g)
    if special is not None:
        return special
    return bareiss_det(sylvester_matrix(f, g).to_lists())


def poly_resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g), exactly, with the Sylvester-determinant sign convention.

    When g has a unit leading coefficient and deg f >= deg g, f is first
    reduced modulo g; the Sylvester matrix then shrinks from deg f + deg g
    to at most 2 deg g - 1 rows. The reduction is exact and sign-tracked, so
    the result equals :func:`sylvester_resultant`.
    """
    special = _zero_case(f, g)
    if special is not None:
        return special
    a, b = f.degree, g.degree
    if a >= b and g.leading in (1, -1):
        _, r = f.divmod_monic(g)
        if r.is_zero():
            return 0
        c = r.degree
        # Res(f,g) = (-1)^{ab} Res(g,f) = (-1)^{ab} lc(g)^{a-c} Res(g,r) = (-1)^{ab+bc} lc(g)^{a-c} Res(r,g)
        sign = -1 if (a * b + b * c) % 2 else 1
        return sign * g.leading ** (a - c) * sylvester_resultant(r, g)
    return sylvester_resultant(f, g)


def circulant_matrix(f: IntPolynomial, size: int) -> IntMatrix:
    """Circulant whose row i is the coefficient vector of f shifted right by i."""
    if size < 1:
        raise InvalidInput("size must be positive")
    if f.degree >= size:
        raise InvalidInput(f"degree {f.degree} is not below circulant size {size}")
    first = [f[i] for i in range(size)]
    return IntMatrix.from_rows([first[size - i:] + first[:size - i] for i in range(size)], size)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """Diagonal of the Smith form: d_1 | d_2 | ... | d_r, then zeros.

    ``invariant_factors`` has length min(rows, cols). When transforms were
    requested, ``left @ M @ right`` is the diagonal matrix of the factors.
    """

    invariant_factors: tuple[int, ...]
    rows: int
    cols: int
    left: IntMatrix | None = None
    right: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    @property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    def diagonal_matrix(self) -> IntMatrix:
        D = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.invariant_factors):
            D[i][i] = d
        return IntMatrix.from_rows(D, self.cols)


def smith_normal_form(M: IntMatrix, transforms: bool = False) -> SnfResult:
    """Smith normal form by unimodular row and column operations.

    Each round moves the smallest nonzero entry (in absolute value) of the
    remaining block to the pivot position, which keeps intermediate entries
    small on the sparse relation matrices this package produces.
    """
    r, c = M.rows, M.cols
    A = M.to_lists()
    U = [[int(i == j) for j in range(r)] for i in range(r)] if transforms else None
    V = [[int(i == j) for j in range(c)] for i in range(c)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    diag: list[int] = []
    n = min(r, c)
    t = 0
    while t < n:
        best = None
        for i in range(t, r):
            row = A[i]
            for j in range(t, c):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            if A[t][t] < 0:
                negate_row(t)
            p = A[t][t]
            for i in range(t + 1, r):
                v = A[i][t]
                if v:
                    add_row(i, t, (2 * v + p) // (2 * p))
            row_t = A[t]
            for j in range(t + 1, c):
                v = row_t[j]
                if v:
                    add_col(j, t, (2 * v + p) // (2 * p))
            # any leftover in the pivot row/column is smaller than p: promote it
            small = None
            for i in range(t + 1, r):
                v = A[i][t]
                if v and (small is None or abs(v) < small[0]):
                    small = (abs(v), i, t)
            for j in range(t + 1, c):
                v = A[t][j]
                if v and (small is None or abs(v) < small[0]):
                    small = (abs(v), t, j)
            if small is not None:
                _, si, sj = small
                if si != t:
                    swap_rows(t, si)
                else:
                    swap_cols(t, sj)
                continue
            # pivot isolated; enforce divisibility of the remaining block
            bad = None
            if p != 1:
                for i in range(t + 1, r):
                    row = A[i]
                    for j in range(t + 1, c):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            add_row(t, bad, -1)
        diag.append(A[t][t])
        t += 1
    diag.extend([0] * (n - len(diag)))
    left = IntMatrix.from_rows(U, r) if U is not None else None
    right = IntMatrix.from_rows(V, c) if V is not None else None
    return SnfResult(tuple(diag), r, c, left, right)
