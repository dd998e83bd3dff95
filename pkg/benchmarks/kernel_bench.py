"""Timing comparison of the two statistics kernels.

Runs the full n^n sweep with the numba kernel and the pure-numpy
fallback, checks the outputs agree bit for bit, and prints a table of
throughputs.  Pass n values as arguments (default: 5 6 7).

    python3 benchmarks/kernel_bench.py 6 7
"""

import sys
import time

import numpy as np

from qtpark.kernels import HAS_NUMBA, iter_stat_chunks


def sweep(n: int, backend: str, threads: int = 1) -> tuple[np.ndarray, float]:
    start = time.perf_counter()
    blocks = [blk for _, blk in iter_stat_chunks(n, threads=threads,
                                                 backend=backend)]
    elapsed = time.perf_counter() - start
    return np.concatenate(blocks), elapsed


def main() -> int:
    sizes = [int(a) for a in sys.argv[1:]] or [5, 6, 7]
    if not HAS_NUMBA:
        print("numba not importable; timing the numpy fallback only.")
    print(f"{'n':>3} {'rows':>12} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for n in sizes:
        rows_np, t_np = sweep(n, "numpy")
        if HAS_NUMBA:
            sweep(n, "numba")  # warm the JIT cache before timing
            rows_nb, t_nb = sweep(n, "numba")
            if not np.array_equal(rows_np, rows_nb):
                print(f"n={n}: KERNELS DISAGREE")
                return 1
            print(f"{n:>3} {len(rows_np):>12} {t_np:>9.2f}s {t_nb:>9.2f}s "
                  f"{t_np / t_nb:>7.1f}x")
        else:
            print(f"{n:>3} {len(rows_np):>12} {t_np:>9.2f}s {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
