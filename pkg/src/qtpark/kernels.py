"""Batch statistics kernels over blocks of preference functions.

The exhaustive checks sweep all n^n preference functions, which is the only
hot loop in the package.  Two interchangeable implementations compute the
same integer table:

* a numba ``@njit`` kernel (row-at-a-time integer loops, GIL released), and
* a pure-numpy vectorized fallback.

The active default is chosen by the ``QTPARK_KERNEL`` environment variable:
``numba``, ``numpy``, or ``auto`` (unset; numba when importable).  Every
function also takes an explicit ``backend`` argument that overrides the
environment, which is what the benchmark and the cross-checking tests use.

Each output row describes one preference function by integers only; the
permutation-valued and composition-valued statistics are packed into
base-n / base-(n+1) codes (big-endian, car labels minus one as digits) so a
row fits in twelve int64 columns.  ``decode_perm`` and ``decode_comp``
invert the packing.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional, Tuple

import numpy as np

try:  # pragma: no cover - exercised indirectly through backend tests
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        return wrap


# Column layout of a statistics block.
AREA, DINV, DPRIM, DSEC, DTERT, DEV, TOUCH, IDES, DWORD, WORD, COMP, PARK = range(12)
NCOL = 12

CHUNK = 1 << 16


def resolve_backend(backend: Optional[str] = None) -> str:
    """Pick 'numba' or 'numpy' from the argument or QTPARK_KERNEL."""
    choice = backend or os.environ.get("QTPARK_KERNEL", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("QTPARK_KERNEL=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"unknown kernel backend {choice!r}")


@njit(cache=True, nogil=True)
def _fill_block_numba(n, start, out):  # pragma: no cover - measured via results
    nrows = out.shape[0]
    f = np.empty(n, np.int64)
    row = np.empty(n, np.int64)
    diag = np.empty(n, np.int64)
    order = np.empty(n, np.int64)
    key = np.empty(n, np.int64)
    mcols = np.empty(n, np.int64)
    pw = np.empty(n, np.int64)
    p = 1
    for j in range(n - 1, -1, -1):
        pw[j] = p
        p *= n
    for r in range(nrows):
        idx = start + r
        for j in range(n - 1, -1, -1):
            f[j] = idx % n + 1
            idx //= n
        # rows assigned in (column, label) order
        nextrow = 1
        for v in range(1, n + 1):
            for c in range(n):
                if f[c] == v:
                    row[c] = nextrow
                    nextrow += 1
        mind = 0
        for c in range(n):
            diag[c] = row[c] - f[c]
            if diag[c] < mind:
                mind = diag[c]
        dev = -mind
        area = n * dev
        dt = 0
        touch = 0
        for c in range(n):
            area += diag[c]
            if diag[c] < 0:
                dt += 1
            if diag[c] == mind:
                touch += 1
        dp = 0
        ds = 0
        for a in range(n):
            for b in range(a + 1, n):
                if diag[a] == diag[b] and f[a] < f[b]:
                    dp += 1
                if diag[a] == diag[b] - 1 and f[a] > f[b]:
                    ds += 1
        ides = 0
        for i in range(1, n):
            if diag[i] > diag[i - 1] or (diag[i] == diag[i - 1] and f[i] > f[i - 1]):
                ides |= 1 << (i - 1)
        # diagword: ascending (n - diag, car); word: ascending (n - diag, n - col)
        dword = 0
        word = 0
        for c in range(n):
            key[c] = (n - diag[c]) * n + c
        for pos in range(n):
            best = -1
            for c in range(n):
                if key[c] >= 0 and (best < 0 or key[c] < key[best]):
                    best = c
            order[pos] = best
            key[best] = -1
        for pos in range(n):
            dword += order[pos] * pw[pos]
        for c in range(n):
            key[c] = (n - diag[c]) * n + (n - f[c])
        for pos in range(n):
            best = -1
            for c in range(n):
                if key[c] >= 0 and (best < 0 or key[c] < key[best]):
                    best = c
            order[pos] = best
            key[best] = -1
        for pos in range(n):
            word += order[pos] * pw[pos]
        comp = 0
        if dev == 0:
            m = 0
            for c in range(n):
                if diag[c] == 0:
                    mcols[m] = f[c]
                    m += 1
            mcols[:m].sort()
            for j in range(m):
                nxtc = mcols[j + 1] if j + 1 < m else n + 1
                comp = comp * (n + 1) + (nxtc - mcols[j])
        out[r, 0] = area
        out[r, 1] = dp + ds + dt
        out[r, 2] = dp
        out[r, 3] = ds
        out[r, 4] = dt
        out[r, 5] = dev
        out[r, 6] = touch
        out[r, 7] = ides
        out[r, 8] = dword
        out[r, 9] = word
        out[r, 10] = comp
        out[r, 11] = 1 if dev == 0 else 0


def _fill_block_numpy(n: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    nrows = idx.size
    powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    F = (idx[:, None] // powers[None, :]) % n + 1
    cars = np.arange(n, dtype=np.int64)

    order = np.argsort(F * n + cars[None, :], axis=1, kind="stable")
    rows = np.empty_like(order)
    np.put_along_axis(rows, order,
                      np.broadcast_to(np.arange(1, n + 1, dtype=np.int64),
                                      order.shape), axis=1)
    diag = rows - F
    dev = -diag.min(axis=1)
    area = diag.sum(axis=1) + n * dev

    da, db = diag[:, :, None], diag[:, None, :]
    ca, cb = F[:, :, None], F[:, None, :]
    tri = (cars[:, None] < cars[None, :])[None, :, :]
    dp = ((da == db) & (ca < cb) & tri).sum(axis=(1, 2))
    ds = ((da == db - 1) & (ca > cb) & tri).sum(axis=(1, 2))
    dt = (diag < 0).sum(axis=1)

    bits = (diag[:, 1:] > diag[:, :-1]) | ((diag[:, 1:] == diag[:, :-1])
                                           & (F[:, 1:] > F[:, :-1]))
    ides = (bits * (1 << np.arange(n - 1, dtype=np.int64))[None, :]).sum(axis=1) \
        if n > 1 else np.zeros(nrows, dtype=np.int64)

    order_dw = np.argsort((n - diag) * n + cars[None, :], axis=1, kind="stable")
    dword = (order_dw * powers[None, :]).sum(axis=1)
    order_w = np.argsort((n - diag) * n + (n - F), axis=1, kind="stable")
    word = (order_w * powers[None, :]).sum(axis=1)

    touch = (diag == -dev[:, None]).sum(axis=1)
    park = dev == 0

    mcols = np.sort(np.where(diag == 0, F, n + 1), axis=1)
    nxt = np.concatenate(
        [mcols[:, 1:], np.full((nrows, 1), n + 1, dtype=np.int64)], axis=1)
    j = np.arange(n, dtype=np.int64)[None, :]
    valid = j < touch[:, None]
    parts = np.where(valid, nxt - mcols, 0)
    mult = np.where(valid,
                    (n + 1) ** np.maximum(touch[:, None] - 1 - j, 0), 0)
    comp = np.where(park, (parts * mult).sum(axis=1), 0)

    out = np.empty((nrows, NCOL), dtype=np.int64)
    out[:, AREA] = area
    out[:, DINV] = dp + ds + dt
    out[:, DPRIM] = dp
    out[:, DSEC] = ds
    out[:, DTERT] = dt
    out[:, DEV] = dev
    out[:, TOUCH] = touch
    out[:, IDES] = ides
    out[:, DWORD] = dword
    out[:, WORD] = word
    out[:, COMP] = comp
    out[:, PARK] = park.astype(np.int64)
    return out


def stats_block(n: int, start: int, stop: int,
                backend: Optional[str] = None) -> np.ndarray:
    """Statistics rows for preference-function indices [start, stop).

    The index is the rank of f in lexicographic order, i.e. the base-n
    number with digits f(1)-1, ..., f(n)-1.
    """
    total = n ** n
    if not 0 <= start <= stop <= total:
        raise ValueError(f"index range [{start}, {stop}) outside [0, {total}]")
    which = resolve_backend(backend)
    if which == "numba":
        out = np.empty((stop - start, NCOL), dtype=np.int64)
        _fill_block_numba(n, start, out)
        return out
    return _fill_block_numpy(n, start, stop)


def iter_stat_chunks(n: int, threads: int = 1, chunk: int = CHUNK,
                     backend: Optional[str] = None
                     ) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (start, block) pairs covering all n^n functions, in order.

    Chunk boundaries depend only on n and ``chunk``, never on ``threads``,
    so the stream of blocks (and anything folded over it in order) is
    identical for any worker count.
    """
    total = n ** n
    starts = list(range(0, total, chunk))
    if threads <= 1 or len(starts) <= 1:
        for s in starts:
            yield s, stats_block(n, s, min(s + chunk, total), backend)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(stats_block, n, s, min(s + chunk, total), backend)
                   for s in starts]
        for s, fut in zip(starts, futures):
            yield s, fut.result()


def decode_perm(code: int, n: int) -> Tuple[int, ...]:
    """Invert the base-n packing of a permutation of 1..n."""
    digits = []
    for _ in range(n):
        digits.append(code % n)
        code //= n
    return tuple(d + 1 for d in reversed(digits))


def decode_comp(code: int, parts: int, n: int) -> Tuple[int, ...]:
    """Invert the base-(n+1) packing of a composition with given part count."""
    out = []
    for _ in range(parts):
        out.append(code % (n + 1))
        code //= n + 1
    return tuple(reversed(out))


def decode_ides(mask: int, n: int) -> frozenset:
    return frozenset(i for i in range(1, n) if mask >> (i - 1) & 1)


def decode_f(index: int, n: int) -> Tuple[int, ...]:
    """The preference vector at a lexicographic rank."""
    digits = []
    for _ in range(n):
        digits.append(index % n + 1)
        index //= n
    return tuple(reversed(digits))
