"""Array kernels for coset enumeration, compiled with numba when it is available.

All state lives in numpy arrays so the drivers can stop (table full) and be
resumed by the Python wrapper after it grows or compacts the table:

    T      (cap, ncols) int32   coset table, -1 = undefined
    p      (cap,) int32         union-find forwarding; p[c] == c iff c is live
    queue  (cap,) int32         coincidence queue
    st     (NSTATE,) int64      scalar state, indexed by the constants below
    ds     (dcap, 2) int32      Felsch deduction stack

Drivers return DONE, NEED_ROWS (no free row left) or FULL (live == max).
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

NALLOC, LIVE, MAXLIVE, PTR, DTOP, DOVERFLOW, PHASE, NSTATE = 0, 1, 2, 3, 4, 5, 6, 7
DONE, NEED_ROWS, FULL = 0, 1, 2


@njit(cache=True)
def _rep(p, k):
    root = k
    while p[root] != root:
        root = p[root]
    while p[k] != root:
        nxt = p[k]
        p[k] = root
        k = nxt
    return root


@njit(cache=True)
def _merge(p, st, queue, qlen, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a == b:
        return qlen
    if a > b:
        a, b = b, a
    p[b] = a
    queue[qlen] = b
    st[LIVE] -= 1
    return qlen + 1


@njit(cache=True)
def _push(ds, st, c, x):
    top = st[DTOP]
    if top < ds.shape[0]:
        ds[top, 0] = c
        ds[top, 1] = x
        st[DTOP] = top + 1
    else:
        st[DOVERFLOW] = 1


@njit(cache=True)
def _coincidence(T, p, st, queue, ds, track, a, b):
    ncols = T.shape[1]
    qlen = _merge(p, st, queue, 0, a, b)
    qi = 0
    while qi < qlen:
        e = queue[qi]
        qi += 1
        for x in range(ncols):
            f = T[e, x]
            if f < 0:
                continue
            xi = x ^ 1
            T[f, xi] = -1
            e1 = _rep(p, e)
            f1 = _rep(p, f)
            v = T[e1, x]
            if v >= 0:
                qlen = _merge(p, st, queue, qlen, f1, v)
            else:
                v = T[f1, xi]
                if v >= 0:
                    qlen = _merge(p, st, queue, qlen, e1, v)
                else:
                    T[e1, x] = f1
                    T[f1, xi] = e1
                    if track:
                        _push(ds, st, e1, x)


@njit(cache=True)
def _define(T, p, st, maxc, c, x):
    if st[LIVE] >= maxc:
        return -FULL
    new = st[NALLOC]
    if new >= T.shape[0]:
        return -NEED_ROWS
    st[NALLOC] = new + 1
    p[new] = new
    for y in range(T.shape[1]):
        T[new, y] = -1
    T[c, x] = new
    T[new, x ^ 1] = c
    st[LIVE] += 1
    if st[LIVE] > st[MAXLIVE]:
        st[MAXLIVE] = st[LIVE]
    return new


@njit(cache=True)
def _scan(T, p, st, queue, ds, track, maxc, c, w, lo, hi, fill):
    """Trace w[lo:hi] at c. Returns 0, or -NEED_ROWS / -FULL if a definition failed."""
    f = c
    b = c
    i = lo
    j = hi - 1
    while True:
        while i <= j:
            nxt = T[f, w[i]]
            if nxt < 0:
                break
            f = nxt
            i += 1
        if i > j:
            if f != c:
                _coincidence(T, p, st, queue, ds, track, f, c)
            return 0
        while j >= i:
            nxt = T[b, w[j] ^ 1]
            if nxt < 0:
                break
            b = nxt
            j -= 1
        if j < i:
            _coincidence(T, p, st, queue, ds, track, f, b)
            return 0
        if i == j:
            T[f, w[i]] = b
            T[b, w[i] ^ 1] = f
            if track:
                _push(ds, st, f, w[i])
            return 0
        if not fill:
            return 0
        new = _define(T, p, st, maxc, f, w[i])
        if new < 0:
            return new
        if track:
            _push(ds, st, f, w[i])


@njit(cache=True)
def lookahead(T, p, st, queue, ds, rel, roff):
    """Scan every relator at every live coset without defining anything."""
    nrel = roff.shape[0] - 1
    for c in range(st[NALLOC]):
        if p[c] != c:
            continue
        for r in range(nrel):
            _scan(T, p, st, queue, ds, False, 0, c, rel, roff[r], roff[r + 1], False)
            if p[c] != c:
                break


@njit(cache=True)
def hlt(T, p, st, queue, ds, maxc, rel, roff, sub, soff, trigger):
    """HLT: trace every relator at each coset in order, defining as needed, then fill the row."""
    ncols = T.shape[1]
    nrel = roff.shape[0] - 1
    if st[PHASE] == 0:
        for h in range(soff.shape[0] - 1):
            status = _scan(T, p, st, queue, ds, False, maxc, 0, sub, soff[h], soff[h + 1], True)
            if status < 0:
                return -status
        st[PHASE] = 1
    while st[PTR] < st[NALLOC]:
        c = st[PTR]
        if p[c] != c:
            st[PTR] = c + 1
            continue
        if st[LIVE] >= trigger:
            return FULL
        for r in range(nrel):
            status = _scan(T, p, st, queue, ds, False, maxc, c, rel, roff[r], roff[r + 1], True)
            if status < 0:
                return -status
            if p[c] != c:
                break
        if p[c] == c:
            for x in range(ncols):
                if T[c, x] < 0:
                    new = _define(T, p, st, maxc, c, x)
                    if new < 0:
                        return -new
        st[PTR] = c + 1
    return DONE


@njit(cache=True)
def felsch(T, p, st, queue, ds, maxc, rel, roff, sub, soff, cw, cstart, cend, coff):
    """Felsch: define the first undefined entry (row-major), then process all deductions."""
    ncols = T.shape[1]
    nrel = roff.shape[0] - 1
    if st[PHASE] == 0:
        for h in range(soff.shape[0] - 1):
            status = _scan(T, p, st, queue, ds, True, maxc, 0, sub, soff[h], soff[h + 1], True)
            if status < 0:
                return -status
        # closing a relator at coset 0 may yield deductions immediately
        for r in range(nrel):
            _scan(T, p, st, queue, ds, True, maxc, 0, rel, roff[r], roff[r + 1], False)
        st[PHASE] = 1
    while True:
        _felsch_deductions(T, p, st, queue, ds, cw, cstart, cend, coff, rel, roff)
        c = st[PTR]
        found = False
        while c < st[NALLOC]:
            if p[c] == c:
                for x in range(ncols):
                    if T[c, x] < 0:
                        found = True
                        new = _define(T, p, st, maxc, c, x)
                        if new < 0:
                            st[PTR] = c
                            return -new
                        _push(ds, st, c, x)
                        break
                if found:
                    break
            c += 1
        st[PTR] = c
        if not found:
            # confirm completeness from the start; coincidences can reopen earlier rows
            for c2 in range(st[NALLOC]):
                if p[c2] == c2:
                    for x in range(ncols):
                        if T[c2, x] < 0:
                            found = True
                            break
                    if found:
                        st[PTR] = c2
                        break
            if not found:
                return DONE


@njit(cache=True)
def _felsch_deductions(T, p, st, queue, ds, cw, cstart, cend, coff, rel, roff):
    nrel = roff.shape[0] - 1
    while True:
        while st[DTOP] > 0:
            st[DTOP] -= 1
            top = st[DTOP]
            c = ds[top, 0]
            x = ds[top, 1]
            if p[c] != c:
                continue
            for k in range(coff[x], coff[x + 1]):
                _scan(T, p, st, queue, ds, True, 0, c, cw, cstart[k], cend[k], False)
                if p[c] != c:
                    break
            if p[c] != c:
                continue
            d = T[c, x]
            if d >= 0 and p[d] == d:
                xi = x ^ 1
                for k in range(coff[xi], coff[xi + 1]):
                    _scan(T, p, st, queue, ds, True, 0, d, cw, cstart[k], cend[k], False)
                    if p[d] != d:
                        break
        if st[DOVERFLOW] == 0:
            return
        st[DOVERFLOW] = 0
        st[DTOP] = 0
        for c in range(st[NALLOC]):
            if p[c] != c:
                continue
            for r in range(nrel):
                _scan(T, p, st, queue, ds, True, 0, c, rel, roff[r], roff[r + 1], False)
                if p[c] != c:
                    break


@njit(cache=True)
def compact(T, p, st):
    """Renumber live cosets 0..live-1 in creation order; remaps the scan pointer."""
    n = st[NALLOC]
    newidx = np.full(n, -1, np.int64)
    k = 0
    newptr = -1
    for c in range(n):
        if p[c] == c:
            if newptr < 0 and c >= st[PTR]:
                newptr = k
            newidx[c] = k
            k += 1
    if newptr < 0:
        newptr = k
    ncols = T.shape[1]
    for c in range(n):
        if p[c] == c:
            row = newidx[c]
            for x in range(ncols):
                v = T[c, x]
                T[row, x] = newidx[_rep(p, v)] if v >= 0 else -1
    for c in range(k):
        p[c] = c
    st[NALLOC] = k
    st[PTR] = newptr
    st[DTOP] = 0
    st[DOVERFLOW] = 1 if st[PHASE] == 1 else 0
