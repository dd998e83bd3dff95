"""Exact count tables over the full set of preference functions.

The identity checks repeatedly need sums of t^area q^dinv (optionally
refined by the ides set) over structured families: all preference
functions with a fixed diagword and deviation, or all parking functions
with a fixed touch.  One kernel sweep of the n^n functions produces every
such table at once; the counts are integers, so the tables are exact and
the generating polynomials built from them are too.

Tables are cached per (kind, n).  Worker count never changes a table:
chunks are deterministic and integer counts commute.
"""

from __future__ import annotations

import threading
from typing import Dict, Optional, Tuple

import numpy as np

from . import kernels
from .qt import QTPoly

QTTable = Dict[Tuple[Tuple[int, ...], int], Dict[Tuple[int, int], int]]
QSymTable = Dict[Tuple[Tuple[int, ...], int], Dict[Tuple[int, int, int], int]]
TouchTable = Dict[Tuple[int, bool], Dict[Tuple[int, int, int], int]]

_cache: dict = {}
_cache_lock = threading.Lock()


def _accumulate(n: int, threads: int, backend: Optional[str], packer, widths):
    """Fold one kernel sweep into a Counter keyed by packed integers."""
    counts: Dict[int, int] = {}
    for _, blk in kernels.iter_stat_chunks(n, threads=threads, backend=backend):
        keys = packer(blk)
        uniq, cnt = np.unique(keys, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            counts[k] = counts.get(k, 0) + c
    return counts


def _check_widths(blk: np.ndarray, n: int) -> None:
    if n >= 8:  # packing uses 8-bit fields for area/dinv and 24 bits for perms
        assert int(blk[:, kernels.AREA].max()) < 256
        assert int(blk[:, kernels.DINV].max()) < 256


def qt_by_diagword(n: int, threads: int = 1,
                   backend: Optional[str] = None) -> QTTable:
    """(diagword, deviation) -> {(area, dinv): count} over all n^n functions."""
    key = ("qt_dw", n)
    with _cache_lock:
        if key in _cache:
            return _cache[key]

    def pack(blk):
        _check_widths(blk, n)
        return (((blk[:, kernels.DWORD] << 4 | blk[:, kernels.DEV]) << 8
                 | blk[:, kernels.AREA]) << 8) | blk[:, kernels.DINV]

    raw = _accumulate(n, threads, backend, pack, None)
    table: QTTable = {}
    for packed, c in raw.items():
        dinv = packed & 0xFF
        area = packed >> 8 & 0xFF
        dev = packed >> 16 & 0xF
        perm = kernels.decode_perm(packed >> 20, n)
        table.setdefault((perm, dev), {})[(area, dinv)] = c
    with _cache_lock:
        _cache[key] = table
    return table


def qsym_by_diagword(n: int, threads: int = 1,
                     backend: Optional[str] = None) -> QSymTable:
    """(diagword, deviation) -> {(area, dinv, ides mask): count}."""
    key = ("qsym_dw", n)
    with _cache_lock:
        if key in _cache:
            return _cache[key]

    def pack(blk):
        _check_widths(blk, n)
        return ((((blk[:, kernels.DWORD] << 4 | blk[:, kernels.DEV]) << 8
                  | blk[:, kernels.AREA]) << 8 | blk[:, kernels.DINV]) << 8
                | blk[:, kernels.IDES])

    raw = _accumulate(n, threads, backend, pack, None)
    table: QSymTable = {}
    for packed, c in raw.items():
        ides = packed & 0xFF
        dinv = packed >> 8 & 0xFF
        area = packed >> 16 & 0xFF
        dev = packed >> 24 & 0xF
        perm = kernels.decode_perm(packed >> 28, n)
        table.setdefault((perm, dev), {})[(area, dinv, ides)] = c
    with _cache_lock:
        _cache[key] = table
    return table


def qsym_by_touch(n: int, threads: int = 1,
                  backend: Optional[str] = None) -> TouchTable:
    """(touch, is parking) -> {(area, dinv, ides mask): count}."""
    key = ("qsym_touch", n)
    with _cache_lock:
        if key in _cache:
            return _cache[key]

    def pack(blk):
        _check_widths(blk, n)
        return ((((blk[:, kernels.TOUCH] << 1 | blk[:, kernels.PARK]) << 8
                  | blk[:, kernels.AREA]) << 8 | blk[:, kernels.DINV]) << 8
                | blk[:, kernels.IDES])

    raw = _accumulate(n, threads, backend, pack, None)
    table: TouchTable = {}
    for packed, c in raw.items():
        ides = packed & 0xFF
        dinv = packed >> 8 & 0xFF
        area = packed >> 16 & 0xFF
        park = bool(packed >> 24 & 1)
        touch = packed >> 25
        table.setdefault((touch, park), {})[(area, dinv, ides)] = c
    with _cache_lock:
        _cache[key] = table
    return table


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def qt_poly_from_counts(counts: Dict[Tuple[int, int], int]) -> QTPoly:
    """Sum of count * t^area q^dinv as an exact polynomial."""
    return QTPoly({(dinv, area): c for (area, dinv), c in counts.items()})
