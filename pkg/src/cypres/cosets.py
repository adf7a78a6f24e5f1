"""Todd-Coxeter coset enumeration.

Two strategies share one table layout. ``"hlt"`` (the default) traces every
relator at each coset in turn, defining cosets as needed, with a lookahead pass
once the live count passes 75% of the bound. ``"felsch"`` always defines the
first undefined entry in row-major order and then processes the resulting
deductions against every cyclic conjugate of the relators.

Generator j owns columns 2j (the generator) and 2j + 1 (its inverse), so
``x ^ 1`` is the inverse column. The kernels live in ``_tc_kernel``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _tc_kernel as K
from .errors import InvalidInput
from .presentations import GroupPresentation, Word

DEFAULT_MAX_COSETS = 1_000_000
DEFAULT_STRATEGY = "hlt"
STRATEGIES = ("hlt", "felsch")
LOOKAHEAD_FRACTION = 0.75
_INITIAL_ROWS = 1024
_DEDUCTION_STACK = 1 << 18


def default_max_cosets() -> int:
    env = os.environ.get("CYPRES_MAX_COSETS")
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise InvalidInput(f"CYPRES_MAX_COSETS must be an integer, got {env!r}") from exc
        if value < 1:
            raise InvalidInput("CYPRES_MAX_COSETS must be positive")
        return value
    return DEFAULT_MAX_COSETS


def _pack(words: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    flat = np.array([x for w in words for x in w], dtype=np.int32)
    offsets = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        offsets[i + 1] = offsets[i] + len(w)
    return flat, offsets


def _conjugates(relators: list[list[int]], ncols: int):
    """Distinct cyclic conjugates of the relators and their inverses, grouped by first column."""
    seen: set[tuple[int, ...]] = set()
    by_col: list[list[tuple[int, ...]]] = [[] for _ in range(ncols)]
    for w in relators:
        inv = [x ^ 1 for x in reversed(w)]
        for base in (w, inv):
            for s in range(len(base)):
                rot = tuple(base[s:] + base[:s])
                if rot not in seen:
                    seen.add(rot)
                    by_col[rot[0]].append(rot)
    words = [list(r) for col in by_col for r in col]
    flat, offsets = _pack(words)
    coff = np.zeros(ncols + 1, dtype=np.int64)
    for x in range(ncols):
        coff[x + 1] = coff[x] + len(by_col[x])
    return flat, offsets[:-1].copy(), offsets[1:].copy(), coff


class CosetTable:
    """Coset table for one enumeration. Coset 0 is the subgroup itself."""

    def __init__(
        self,
        presentation: GroupPresentation,
        subgroup: Sequence[Word] = (),
        max_cosets: int | None = None,
        strategy: str = DEFAULT_STRATEGY,
    ):
        if max_cosets is None:
            max_cosets = default_max_cosets()
        if max_cosets < 1:
            raise InvalidInput("max_cosets must be at least 1")
        if strategy not in STRATEGIES:
            raise InvalidInput(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
        self.presentation = presentation
        self.max_cosets = max_cosets
        self.strategy = strategy
        self.gens = presentation.generators
        self.ncols = 2 * len(self.gens)
        self._col = {g: 2 * j for j, g in enumerate(self.gens)}
        for h in subgroup:
            unknown = h.generators() - set(self.gens)
            if unknown:
                raise InvalidInput(f"subgroup word uses undeclared generator(s) {sorted(unknown)}")
        self.relators = [self._columns(w) for w in presentation.relators if not w.is_identity]
        self.subgroup = [self._columns(w) for w in subgroup if not w.is_identity]
        self.lookaheads = 0
        self.compactions = 0
        # every live coset needs a row; dead rows are reclaimed by compaction
        self._row_limit = 2 * max_cosets + 2
        rows = min(_INITIAL_ROWS, self._row_limit)
        self.T = np.full((rows, max(self.ncols, 1)), -1, dtype=np.int32)
        self.p = np.zeros(rows, dtype=np.int32)
        self.queue = np.zeros(rows, dtype=np.int32)
        self.ds = np.zeros((_DEDUCTION_STACK, 2), dtype=np.int32)
        self.st = np.zeros(K.NSTATE, dtype=np.int64)
        self.st[K.NALLOC] = 1
        self.st[K.LIVE] = 1
        self.st[K.MAXLIVE] = 1
        self.total_defined = 1

    def _columns(self, w: Word) -> list[int]:
        col = self._col
        return [col[g] if s > 0 else col[g] ^ 1 for g, s in w.expanded()]

    @property
    def live(self) -> int:
        return int(self.st[K.LIVE])

    @property
    def max_live(self) -> int:
        return int(self.st[K.MAXLIVE])

    # -- storage ------------------------------------------------------------

    def _make_room(self) -> None:
        nalloc = int(self.st[K.NALLOC])
        rows = self.T.shape[0]
        if nalloc - self.live >= nalloc // 4 or rows >= self._row_limit:
            K.compact(self.T, self.p, self.st)
            self.compactions += 1
            return
        new_rows = min(2 * rows, self._row_limit)
        T = np.full((new_rows, self.T.shape[1]), -1, dtype=np.int32)
        T[:rows] = self.T
        p = np.zeros(new_rows, dtype=np.int32)
        p[:rows] = self.p
        self.T, self.p = T, p
        self.queue = np.zeros(new_rows, dtype=np.int32)

    # -- driver -------------------------------------------------------------

    def run(self) -> bool:
        """Enumerate; True when the table closed, False if max_cosets was exceeded."""
        if self.ncols == 0:
            return True
        rel, roff = _pack(self.relators)
        sub, soff = _pack(self.subgroup)
        if self.strategy == "felsch":
            cw, cstart, cend, coff = _conjugates(self.relators, self.ncols)
        trigger = max(1, int(LOOKAHEAD_FRACTION * self.max_cosets))
        while True:
            before = int(self.st[K.NALLOC])
            if self.strategy == "felsch":
                status = K.felsch(
                    self.T, self.p, self.st, self.queue, self.ds, self.max_cosets,
                    rel, roff, sub, soff, cw, cstart, cend, coff,
                )
            else:
                status = K.hlt(
                    self.T, self.p, self.st, self.queue, self.ds, self.max_cosets,
                    rel, roff, sub, soff, trigger,
                )
            self.total_defined += int(self.st[K.NALLOC]) - before
            if status == K.DONE:
                return True
            if status == K.NEED_ROWS:
                self._make_room()
                continue
            if self.strategy == "felsch":
                return False
            K.lookahead(self.T, self.p, self.st, self.queue, self.ds, rel, roff)
            self.lookaheads += 1
            if self.live >= self.max_cosets:
                return False
            trigger = self.live + max(1, (self.max_cosets - self.live) // 2)

    # -- inspection ---------------------------------------------------------

    def live_cosets(self) -> list[int]:
        n = int(self.st[K.NALLOC])
        return [c for c in range(n) if self.p[c] == c]

    def _rep(self, c: int) -> int:
        while self.p[c] != c:
            c = int(self.p[c])
        return c

    def compact(self) -> list[list[int]]:
        """Closed table renumbered 0..index-1 in creation order; rows are cosets."""
        live = self.live_cosets()
        pos = {c: i for i, c in enumerate(live)}
        nc = self.ncols
        return [[pos[self._rep(int(self.T[c, x]))] if self.T[c, x] >= 0 else -1 for x in range(nc)] for c in live]

    def trace(self, coset: int, w: Word) -> int:
        """Image of a (live) coset under w; -1 if the path hits an undefined entry."""
        c = coset
        for x in self._columns(w):
            c = int(self.T[c, x])
            if c < 0:
                return -1
            c = self._rep(c)
        return c

    def is_closed(self) -> bool:
        """Complete, compatible, and every relator is a loop at every live coset."""
        nc = self.ncols
        for c in self.live_cosets():
            for x in range(nc):
                d = int(self.T[c, x])
                if d < 0 or self.p[d] != d or self.T[d, x ^ 1] != c:
                    return False
            for w in self.relators:
                if self._walk(c, w) != c:
                    return False
        for h in self.subgroup:
            if self._walk(0, h) != 0:
                return False
        return True

    def _walk(self, c: int, w: list[int]) -> int:
        for x in w:
            c = int(self.T[c, x])
            if c < 0:
                return -1
        return c


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of :func:`enumerate_cosets`. ``index`` is None when the bound was exceeded."""

    index: int | None
    max_cosets: int
    total_defined: int
    max_live: int
    strategy: str = DEFAULT_STRATEGY

    @property
    def exceeded(self) -> bool:
        return self.index is None


def enumerate_cosets(
    presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int | None = None,
    *,
    strategy: str = DEFAULT_STRATEGY,
    return_table: bool = False,
):
    """Index of the subgroup generated by ``subgroup`` (trivial subgroup: the group order).

    ``presentation`` may be a GroupPresentation or anything with
    ``to_presentation()``. Returns an :class:`EnumerationResult`, or
    ``(result, table)`` when ``return_table`` is set.
    """
    table = CosetTable(presentation.to_presentation(), subgroup, max_cosets, strategy)
    closed = table.run()
    result = EnumerationResult(
        index=table.live if closed else None,
        max_cosets=table.max_cosets,
        total_defined=table.total_defined,
        max_live=table.max_live,
        strategy=strategy,
    )
    return (result, table) if return_table else result


@dataclass(frozen=True)
class OrderAgreement:
    """Coset counts for J_n(m,k) over the trivial subgroup and over <y>."""

    params: tuple[int, int, int]
    expected: int
    trivial: EnumerationResult
    y: EnumerationResult

    @property
    def exceeded(self) -> bool:
        return self.trivial.exceeded or self.y.exceeded

    @property
    def agree(self) -> bool:
        if self.exceeded:
            return False
        n, m, _ = self.params
        return self.trivial.index == self.expected == n * abs(m) * self.y.index


def verify_order(p, max_cosets: int | None = None) -> OrderAgreement:
    """Enumerate J_n(m,k) (as given) over 1 and <y>; compare with group_order."""
    from .jfamily import group_order
    from .presentations import build_j_presentation

    order = group_order(p)
    if not order.is_finite:
        raise InvalidInput(f"{p}: group is infinite")
    pres = build_j_presentation(p)
    return OrderAgreement(
        p.as_tuple(),
        order.value,
        enumerate_cosets(pres, (), max_cosets),
        enumerate_cosets(pres, (Word.of("y"),), max_cosets),
    )
