"""Batch kernels against the per-function reference, across backends."""

import numpy as np
import pytest

from qtpark import kernels
from qtpark.kernels import (AREA, COMP, DEV, DINV, DPRIM, DSEC, DTERT, DWORD,
                            HAS_NUMBA, IDES, PARK, TOUCH, WORD, decode_comp,
                            decode_f, decode_ides, decode_perm,
                            iter_stat_chunks, resolve_backend, stats_block)
from qtpark.paths import PrefFunc, stats

BACKENDS = ["numpy"] + (["numba"] if HAS_NUMBA else [])


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_block_matches_reference(backend, n):
    block = stats_block(n, 0, n ** n, backend=backend)
    for idx in range(n ** n):
        f = decode_f(idx, n)
        s = stats(PrefFunc(f))
        row = block[idx]
        assert row[AREA] == s.area
        assert row[DINV] == s.dinv
        assert (row[DPRIM], row[DSEC], row[DTERT]) == s.dinv_parts
        assert row[DEV] == s.deviation
        assert row[TOUCH] == s.touch
        assert decode_ides(int(row[IDES]), n) == s.ides
        assert decode_perm(int(row[DWORD]), n) == s.diagword
        assert decode_perm(int(row[WORD]), n) == s.word
        assert bool(row[PARK]) == (s.deviation == 0)
        if s.comp is not None:
            assert decode_comp(int(row[COMP]), s.touch, n) == s.comp


@pytest.mark.skipif(not HAS_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize("n", [5, 6])
def test_backends_agree(n):
    a = stats_block(n, 0, n ** n, backend="numpy")
    b = stats_block(n, 0, n ** n, backend="numba")
    assert np.array_equal(a, b)


@pytest.mark.parametrize("threads", [1, 2, 8])
def test_chunk_stream_thread_invariant(threads):
    n = 5
    blocks = [blk for _, blk in iter_stat_chunks(n, threads=threads,
                                                 chunk=500)]
    whole = np.concatenate(blocks)
    assert np.array_equal(whole, stats_block(n, 0, n ** n))


def test_chunk_starts_cover_range():
    starts = [s for s, _ in iter_stat_chunks(4, chunk=100)]
    assert starts == list(range(0, 256, 100))


def test_block_bounds():
    with pytest.raises(ValueError):
        stats_block(3, 0, 28)
    with pytest.raises(ValueError):
        stats_block(3, -1, 5)


def test_resolve_backend(monkeypatch):
    assert resolve_backend("numpy") == "numpy"
    monkeypatch.setenv("QTPARK_KERNEL", "numpy")
    assert resolve_backend() == "numpy"
    monkeypatch.setenv("QTPARK_KERNEL", "bogus")
    with pytest.raises(ValueError):
        resolve_backend()
    monkeypatch.delenv("QTPARK_KERNEL")
    assert resolve_backend() in ("numpy", "numba")


def test_decode_round_trips():
    assert decode_f(0, 3) == (1, 1, 1)
    assert decode_f(26, 3) == (3, 3, 3)
    assert decode_ides(0b101, 4) == frozenset({1, 3})
    perm = (2, 4, 1, 3)
    code = 0
    for v in perm:
        code = code * 4 + (v - 1)
    assert decode_perm(code, 4) == perm
