#!/usr/bin/env python3
"""Benchmark the compiled grid kernels against the numpy fallback.

Run after building the extension in place (or installing the package):

    python benchmarks/bench_grid.py
"""

import time

import numpy as np

from ambit import _grid_py

try:
    from ambit import _grid_cy
except ImportError:
    _grid_cy = None


def timeit(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    rng = np.random.default_rng(20240501)
    print(f"{'kernel':<28} {'k':>2} {'g':>4} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    cases = [(2, 101), (3, 101), (4, 41), (4, 101)]
    for k, g in cases:
        lo = np.sort(rng.random((k, 2)), axis=1)
        grids = np.stack([np.linspace(a, b, g) for a, b in lo])
        t_py = timeit(_grid_py.max_regret_by_enumeration, grids)
        if _grid_cy is not None:
            t_cy = timeit(_grid_cy.max_regret_by_enumeration, grids)
            np.testing.assert_allclose(
                _grid_py.max_regret_by_enumeration(grids),
                _grid_cy.max_regret_by_enumeration(grids),
                rtol=0,
                atol=0,
            )
            print(
                f"{'max_regret_by_enumeration':<28} {k:>2} {g:>4} "
                f"{t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x"
            )
        else:
            print(
                f"{'max_regret_by_enumeration':<28} {k:>2} {g:>4} "
                f"{t_py:>9.4f}s {'n/a':>10} {'':>8}"
            )
    for k, g in [(3, 41), (4, 21)]:
        lo = np.sort(rng.random((k, 2)), axis=1)
        grids = np.stack([np.linspace(a, b, g) for a, b in lo])
        t_py = timeit(_grid_py.dominance_envelope_by_enumeration, grids)
        if _grid_cy is not None:
            t_cy = timeit(_grid_cy.dominance_envelope_by_enumeration, grids)
            np.testing.assert_allclose(
                _grid_py.dominance_envelope_by_enumeration(grids),
                _grid_cy.dominance_envelope_by_enumeration(grids),
                rtol=0,
                atol=0,
            )
            print(
                f"{'dominance_envelope':<28} {k:>2} {g:>4} "
                f"{t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x"
            )
        else:
            print(
                f"{'dominance_envelope':<28} {k:>2} {g:>4} "
                f"{t_py:>9.4f}s {'n/a':>10} {'':>8}"
            )


if __name__ == "__main__":
    main()
