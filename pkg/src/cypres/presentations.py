"""Words, finite presentations, the J_n(m,k) presentation families, and a text format.

Generators are strings in a :class:`GroupPresentation` and non-negative
integers (meaning x_0, x_1, ...) inside cyclic and bicyclic presentations.
Relators are words equal to the identity; a relation a = b is stored as
a * b^-1.

Text format::

    < t, y | t^4, y^3 t^3 y t^2 >

Generators are separated by commas or whitespace, relators by commas, factors
are ``gen`` or ``gen^e`` (e may be negative) with optional ``*`` between
them, and ``1`` denotes the empty word.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .algebra import IntMatrix, IntPolynomial, circulant_matrix
from .errors import DegenerateInput, InvalidInput, ParseError
from .params import JParams, normalize

Gen = Union[str, int]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _gen_name(g: Gen) -> str:
    return f"x{g}" if isinstance(g, int) else g


def _reduce(letters: Iterable[tuple[Gen, int]]) -> tuple[tuple[Gen, int], ...]:
    out: list[tuple[Gen, int]] = []
    for g, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word, stored as syllables ``(generator, nonzero exponent)``."""

    letters: tuple[tuple[Gen, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce((g, int(e)) for g, e in self.letters))

    @classmethod
    def of(cls, *letters: Gen | tuple[Gen, int]) -> Word:
        """``Word.of("t", ("y", -2), 3)`` -- bare generators mean exponent 1."""
        return cls(tuple(x if isinstance(x, tuple) else (x, 1) for x in letters))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, e: int) -> Word:
        base = self if e >= 0 else self.inverse()
        return Word(base.letters * abs(e))

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[Gen]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, g: Gen) -> int:
        return sum(e for h, e in self.letters if h == g)

    def expanded(self) -> Iterator[tuple[Gen, int]]:
        """Letters one at a time as ``(generator, +1 or -1)``."""
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    def map_generators(self, fn) -> Word:
        return Word(tuple((fn(g), e) for g, e in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(_gen_name(g) if e == 1 else f"{_gen_name(g)}^{e}" for g, e in self.letters)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def _x(*pairs: tuple[int, int] | int) -> Word:
    return Word.of(*pairs)


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(gens)) != len(gens):
            raise InvalidInput("duplicate generator")
        for g in gens:
            if not isinstance(g, str) or not _IDENT.match(g):
                raise InvalidInput(f"invalid generator name {g!r}")
        declared = set(gens)
        for r in self.relators:
            missing = r.generators() - declared
            if missing:
                raise InvalidInput(f"undeclared generator(s) {sorted(map(str, missing))} in relator {r}")

    def relation_matrix(self) -> IntMatrix:
        """Rows are relators, columns generators, entries exponent sums."""
        col = {g: j for j, g in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for g, e in r.letters:
                row[col[g]] += e
            rows.append(row)
        return IntMatrix.from_rows(rows, len(self.generators))

    def to_presentation(self) -> GroupPresentation:
        return self

    def __str__(self) -> str:
        return print_presentation(self)


def _check_indices(w: Word, r: int) -> None:
    for g in w.generators():
        if not isinstance(g, int):
            raise InvalidInput(f"indexed word expected, found generator {g!r}")
        if not 0 <= g < r:
            raise InvalidInput(f"generator index {g} outside [0, {r})")


def _mod_word(w: Word, r: int) -> Word:
    for g in w.generators():
        if not isinstance(g, int):
            raise InvalidInput(f"indexed word expected, found generator {g!r}")
    return w.map_generators(lambda i: i % r)


def representer_polynomial(w: Word, r: int) -> IntPolynomial:
    """Polynomial whose x^i coefficient is the exponent sum of x_i in w."""
    _check_indices(w, r)
    coeffs = [0] * r
    for g, e in w.letters:
        coeffs[g] += e
    return IntPolynomial(tuple(coeffs))


def shift(w: Word, r: int, i: int) -> Word:
    """Apply the shift automorphism x_j -> x_{j+i mod r}."""
    _check_indices(w, r)
    return w.map_generators(lambda j: (j + i) % r)


def _indexed_generators(r: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(r))


@dataclass(frozen=True)
class CyclicPresentation:
    """G_r(w): generators x_0..x_{r-1}, relators the r shifts of w."""

    r: int
    w: Word

    def __post_init__(self):
        if self.r < 1:
            raise InvalidInput("generator count must be positive")
        object.__setattr__(self, "w", _mod_word(self.w, self.r))

    def relators(self) -> list[Word]:
        return [shift(self.w, self.r, i) for i in range(self.r)]

    def polynomial(self) -> IntPolynomial:
        return representer_polynomial(self.w, self.r)

    def relation_matrix(self) -> IntMatrix:
        return circulant_matrix(self.polynomial(), self.r)

    def to_presentation(self) -> GroupPresentation:
        return GroupPresentation(_indexed_generators(self.r), tuple(w.map_generators(_gen_name) for w in self.relators()))

    def __str__(self) -> str:
        return print_presentation(self.to_presentation())


@dataclass(frozen=True)
class BicyclicPresentation:
    """G_r(w, v): relators are all shifts of w followed by all shifts of v."""

    r: int
    w: Word
    v: Word

    def __post_init__(self):
        if self.r < 1:
            raise InvalidInput("generator count must be positive")
        object.__setattr__(self, "w", _mod_word(self.w, self.r))
        object.__setattr__(self, "v", _mod_word(self.v, self.r))

    def relators(self) -> list[Word]:
        return [shift(self.w, self.r, i) for i in range(self.r)] + [shift(self.v, self.r, i) for i in range(self.r)]

    def relation_matrix(self) -> IntMatrix:
        top = circulant_matrix(representer_polynomial(self.w, self.r), self.r)
        return top.vstack(circulant_matrix(representer_polynomial(self.v, self.r), self.r))

    def to_presentation(self) -> GroupPresentation:
        return GroupPresentation(_indexed_generators(self.r), tuple(w.map_generators(_gen_name) for w in self.relators()))

    def __str__(self) -> str:
        return print_presentation(self.to_presentation())


# ---------------------------------------------------------------------------
# Families


def build_j_presentation(p: JParams) -> GroupPresentation:
    """<t, y | t^n, y^(m-k) t^3 y^k t^2>, with the parameters exactly as given."""
    if p.n not in (4, 6):
        raise InvalidInput(f"n must be 4 or 6, got {p.n}")
    return GroupPresentation(
        ("t", "y"),
        (Word.of(("t", p.n)), Word.of(("y", p.m - p.k), ("t", 3), ("y", p.k), ("t", 2))),
    )


def w_word(n: int, m: int, k: int) -> Word:
    """(x_0 x_m ... x_{(n/2-1)m}) (x_k x_{k+m} ... x_{k+(n/2-2)m})^-1, indices mod nm."""
    r = n * m
    head = Word.of(*[(a * m) % r for a in range(n // 2)])
    tail = Word.of(*[(k + a * m) % r for a in range(n // 2 - 1)])
    return head * tail.inverse()


def v_word(n: int, m: int) -> Word:
    r = n * m
    return Word.of(*[(a * m) % r for a in range(n)])


def u_word(n: int, m: int) -> Word:
    return Word.of(0, (n * m) // 2)


def _positive(p: JParams) -> JParams:
    q = normalize(p)
    if q.m == 0:
        raise DegenerateInput(f"{p}: m = 0, the derived subgroup is trivial")
    return q


def build_derived_presentation(p: JParams) -> BicyclicPresentation:
    """The derived subgroup J' as G_{nm}(w_n(m,k), v_n(m))."""
    q = _positive(p)
    return BicyclicPresentation(q.nm, w_word(q.n, q.m, q.k), v_word(q.n, q.m))


def build_u_presentation(p: JParams) -> BicyclicPresentation:
    """G_{nm}(w_n(m,k), x_0 x_{nm/2}); same abelianization as the derived presentation."""
    q = _positive(p)
    return BicyclicPresentation(q.nm, w_word(q.n, q.m, q.k), u_word(q.n, q.m))


def build_refined_derived_presentation(p: JParams) -> GroupPresentation:
    """Presentation of J' valid when gcd(m, k) = 1, with the commutation relations made explicit.

    n = 4:  x_i x_{i+m} = x_{i+k},  [x_i, x_{i+m}],  x_i x_{i+2m},  x_i^2 = x_{i+2k-m}
    n = 6:  x_i^2 = x_{i+k-m} x_{i+k},  x_i x_{i+2m} = x_{i+m},  [x_i, x_{i+m}],  x_i^3 = x_{i+m-2k}^4
    """
    q = _positive(p)
    if not q.coprime:
        raise InvalidInput(f"{p}: refined presentation requires gcd(m, k) = 1")
    n, m, k, r = q.n, q.m, q.k, q.nm
    rels: list[Word] = []
    for i in range(r):
        def x(j: int, e: int = 1) -> Word:
            return Word.of(((i + j) % r, e))
        if n == 4:
            rels.append(x(0) * x(m) * x(k, -1))
            rels.append(commutator(x(0), x(m)))
            rels.append(x(0) * x(2 * m))
            rels.append(x(0, 2) * x(2 * k - m, -1))
        else:
            rels.append(x(0, 2) * (x(k - m) * x(k)).inverse())
            rels.append(x(0) * x(2 * m) * x(m, -1))
            rels.append(commutator(x(0), x(m)))
            rels.append(x(0, 3) * x(m - 2 * k, -4))
    return GroupPresentation(_indexed_generators(r), tuple(w.map_generators(_gen_name) for w in rels))


def build_fabc_presentation(p: JParams) -> GroupPresentation:
    """Two-generator presentation in R = involution, S:

    n = 4:  <R, S | R^2, R S^m R S^k R S^(m-k)>               (the group F^{m,k,m-k})
    n = 6:  <R, S | R^2, R S^m R S^k R S^(m-k) R S^k R S^(m-k)>
    """
    if p.n not in (4, 6):
        raise InvalidInput(f"n must be 4 or 6, got {p.n}")
    m, k = p.m, p.k
    body = [("R", 1), ("S", m), ("R", 1), ("S", k), ("R", 1), ("S", m - k)]
    if p.n == 6:
        body += [("R", 1), ("S", k), ("R", 1), ("S", m - k)]
    return GroupPresentation(("R", "S"), (Word.of(("R", 2)), Word(tuple(body))))


def _check_fib(r: int, n: int, l: int, s: int) -> None:
    for name, val in (("r", r), ("n", n), ("l", l), ("s", s)):
        if val < 1:
            raise InvalidInput(f"{name} must be positive, got {val}")


def fibonacci_word(r: int, n: int, l: int = 1, s: int = 1) -> Word:
    """(x_0 ... x_{r-1}) (x_{l-1+r} ... x_{l-1+r+s-1})^-1 with subscripts mod n."""
    _check_fib(r, n, l, s)
    head = Word.of(*[i % n for i in range(r)])
    tail = Word.of(*[(l - 1 + r + j) % n for j in range(s)])
    return head * tail.inverse()


def build_fibonacci_presentation(r: int, n: int, l: int = 1, s: int = 1) -> CyclicPresentation:
    """Generalized Fibonacci group F(r,n,l,s); H(r,n,s) = F(r,n,1,s), F(r,n,l) = F(r,n,l,1)."""
    return CyclicPresentation(n, fibonacci_word(r, n, l, s))


def build_E_presentation(r: int, n: int, l: int = 1, s: int = 1) -> GroupPresentation:
    """Split extension F(r,n,l,s) x| Z_n: <y, t | t^n, y^r t^(s+l-1) y^-s t^-(r+l-1)>."""
    _check_fib(r, n, l, s)
    return GroupPresentation(
        ("y", "t"),
        (Word.of(("t", n)), Word.of(("y", r), ("t", s + l - 1), ("y", -s), ("t", -(r + l - 1)))),
    )


def build_relative_cyclic_presentation(n: int, m: int, k: int) -> GroupPresentation:
    """<y, t | t^n, y^(m-k) t y^k t^-1>, the Z_n-extension of G_n(x_0^(m-k) x_1^-k)."""
    if n < 1:
        raise InvalidInput("n must be positive")
    return GroupPresentation(("y", "t"), (Word.of(("t", n)), Word.of(("y", m - k), "t", ("y", k), ("t", -1))))


# ---------------------------------------------------------------------------
# Text format

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|(?P<punct>[<>|,*^])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = mt.lastgroup
        chunk = mt.group()
        if kind != "ws":
            toks.append(_Tok(chunk if kind == "punct" else kind, chunk, line, pos - line_start + 1))
        for idx, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + idx + 1
        pos = mt.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, what: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {what or kind!r}, found {found}", tok.line, tok.col)
        self.i += 1
        return tok

    def parse(self) -> GroupPresentation:
        self.take("<")
        gens: list[str] = []
        seen: set[str] = set()
        while self.peek().kind == "ident":
            tok = self.take("ident")
            if tok.text in seen:
                raise ParseError(f"duplicate generator {tok.text!r}", tok.line, tok.col)
            seen.add(tok.text)
            gens.append(tok.text)
            if self.peek().kind == ",":
                self.take(",")
                if self.peek().kind != "ident":
                    self.take("ident", "generator")
        self.take("|", "'|'")
        rels: list[Word] = []
        if self.peek().kind != ">":
            rels.append(self.relator(seen))
            while self.peek().kind == ",":
                self.take(",")
                rels.append(self.relator(seen))
        self.take(">", "'>' or ','")
        self.take("eof", "end of input")
        return GroupPresentation(tuple(gens), tuple(rels))

    def relator(self, declared: set[str]) -> Word:
        letters: list[tuple[str, int]] = []
        first = True
        while True:
            tok = self.peek()
            if tok.kind == "int" and tok.text == "1":
                self.i += 1
            elif tok.kind == "ident":
                self.i += 1
                if tok.text not in declared:
                    raise ParseError(f"undeclared generator {tok.text!r}", tok.line, tok.col)
                exp = 1
                if self.peek().kind == "^":
                    self.take("^")
                    exp = int(self.take("int", "integer exponent").text)
                letters.append((tok.text, exp))
            elif first:
                self.take("ident", "generator")
            else:
                break
            first = False
            if self.peek().kind == "*":
                self.take("*")
                if self.peek().kind not in ("ident", "int"):
                    self.take("ident", "generator")
        return Word(tuple(letters))


def parse_presentation(text: str) -> GroupPresentation:
    return _Parser(text).parse()


def parse_word(text: str, generators: Iterable[str]) -> Word:
    """A single word over ``generators``, in the relator syntax ("1" is the identity)."""
    parser = _Parser(text)
    w = parser.relator(set(generators))
    parser.take("eof", "end of word")
    return w


def print_presentation(p: GroupPresentation | CyclicPresentation | BicyclicPresentation) -> str:
    gp = p.to_presentation()
    return f"< {', '.join(gp.generators)} | {', '.join(str(r) for r in gp.relators)} >"

